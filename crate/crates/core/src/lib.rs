//! Exact coincidence theory for finite digital images.
//!
//! A digital image is a finite subset of `Z^n` with a symmetric,
//! antireflexive adjacency, and a map between images is continuous when it
//! sends adjacent points to equal or adjacent points. This crate enumerates
//! continuous maps, decides digital homotopy and rigidity, and computes the
//! coincidence and fixed point spectra built on them:
//!
//! - [`image`], [`fixtures`], [`iso`]: images, the named images, isomorphisms
//! - [`maps`]: continuous maps, coincidence and fixed point sets
//! - [`enumeration`]: budgeted backtracking over continuous maps
//! - [`homotopy`]: one-step homotopy, classes, rigidity, contractibility
//! - [`spectra`]: `CS_i(X,Y)`, `F(X)`, `CFS_i(X)`
//! - [`hspectra`]: `HCS`, `HFS`, `MC`, `MCF`, `m_j`
//! - [`verify`]: theorem checks, the conjecture search and reports
//! - [`io`], [`cli`]: file formats and the command-line front end

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod homotopy;
pub mod hspectra;
pub mod image;
pub mod io;
pub mod iso;
pub mod maps;
pub mod spectra;
pub mod verify;

pub use enumeration::{EnumerationBudget, EnumerationOutcome};
pub use error::{Error, Result};
pub use fixtures::Builtin;
pub use homotopy::{Decision, HomotopyClass, HomotopyWitness};
pub use image::{AdjacencySpec, DigitalImage, Point};
pub use iso::Isomorphism;
pub use maps::{DigitalMap, PointSet};
pub use spectra::Spectrum;
