//! Machine checks of the coincidence theorems on concrete instances.
//!
//! Each check runs on one instance and produces a [`VerificationReport`] with a
//! pass, fail or skipped verdict. [`run_suite`] collects the checks over the
//! named images or over seeded random images, and [`conjecture_search`]
//! explores disconnected domains against edgeless codomains.

mod checks;
mod conjecture;
pub mod random;
mod report;
mod suite;

use std::fmt;
use std::str::FromStr;

use crate::enumeration::EnumerationBudget;
use crate::error::{Error, Result};

pub use checks::*;
pub use conjecture::{
    component_image, conjecture_search, partitions, subset_sums, CONJECTURE, REDUCTION,
};
pub use report::{exit_code, Instance, Verdict, VerificationReport};
pub use suite::{cycle_fixed_point_spectrum, run_suite, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::invalid(format!("unknown output format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

/// Settings shared by every check of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Per-check budget; `None` picks [`EnumerationBudget::default_for`] the
    /// instance sizes.
    pub budget: Option<EnumerationBudget>,
    /// Largest arity `i` for `CS_i`, `HCS` and friends.
    pub i_max: usize,
    pub j_max: usize,
    pub format: OutputFormat,
    /// Run checks one at a time instead of in parallel.
    pub deterministic: bool,
    pub seed: u64,
    /// Number of random instances in the `random-small` suite.
    pub random_instances: usize,
    pub random_max_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: None,
            i_max: 3,
            j_max: 4,
            format: OutputFormat::Text,
            deterministic: true,
            seed: 0,
            random_instances: 200,
            random_max_points: 6,
        }
    }
}

impl RunConfig {
    pub fn budget_for(&self, domain_len: usize, codomain_len: usize) -> EnumerationBudget {
        self.budget
            .unwrap_or_else(|| EnumerationBudget::default_for(domain_len, codomain_len))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(b) = &self.budget {
            b.validate()?;
        }
        if self.i_max < 2 {
            return Err(Error::invalid("i_max must be at least 2"));
        }
        if self.j_max < 1 {
            return Err(Error::invalid("j_max must be at least 1"));
        }
        if self.random_max_points == 0 {
            return Err(Error::invalid("random images need at least one point"));
        }
        Ok(())
    }
}
