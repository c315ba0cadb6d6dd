//! Homotopy coincidence spectra, minimum coincidence numbers and the
//! self-coincidence sequence `m_j`.
//!
//! A tuple `(g_1, ..., g_i)` with `g_j ≃ f_j` draws one map per slot from that
//! slot's homotopy class. Homotopy classes are either equal or disjoint, so the
//! slots group into distinct classes `K_c` with multiplicities `k_c`, and the
//! distinct maps drawn from `K_c` form a nonempty set of at most `k_c` maps.
//! The equalizer search then runs one stage per class.

use std::sync::Arc;

use serde::Serialize;

use crate::enumeration::{EnumerationBudget, Meter};
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_class_with, HomotopyClass};
use crate::image::DigitalImage;
use crate::maps::DigitalMap;
use crate::spectra::{equalizer_search, to_values, Goal, Spectrum, Stage, Values};

/// Values of `HCS` or `HFS` with their minimum (`MC` or `MCF`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopySpectrumResult {
    pub values: Spectrum,
    /// False when some homotopy class could not be closed within budget.
    pub classes_complete: bool,
    pub min_value: Option<usize>,
}

/// One `(j, m_j)` entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelfCoincidenceEntry {
    pub j: usize,
    pub value: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCoincidenceSequence {
    pub entries: Vec<SelfCoincidenceEntry>,
}

impl SelfCoincidenceSequence {
    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.exact)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].value <= w[0].value)
    }
}

/// Distinct classes of the given maps with their multiplicities, in order of
/// first appearance.
struct GroupedClasses {
    pools: Vec<Vec<Values>>,
    multiplicity: Vec<usize>,
    complete: bool,
}

fn group_classes(maps: &[&DigitalMap], meter: &mut Meter) -> GroupedClasses {
    let mut classes: Vec<HomotopyClass> = Vec::new();
    let mut multiplicity: Vec<usize> = Vec::new();
    for f in maps {
        // a truncated class may miss f even when f is homotopic to it; treating
        // f separately then only under-approximates
        match classes.iter().position(|k| k.contains(f)) {
            Some(c) => multiplicity[c] += 1,
            None => {
                classes.push(homotopy_class_with(f, meter));
                multiplicity.push(1);
            }
        }
    }
    let complete = classes.iter().all(HomotopyClass::is_complete);
    let pools = classes
        .iter()
        .map(|k| k.assignments().map(to_values).collect())
        .collect();
    GroupedClasses {
        pools,
        multiplicity,
        complete,
    }
}

fn check_family(maps: &[&DigitalMap], self_maps: bool) -> Result<()> {
    let first = maps
        .first()
        .ok_or_else(|| Error::invalid("need at least one map"))?;
    if maps.iter().any(|m| !m.same_images(first)) {
        return Err(Error::invalid("maps do not share domain and codomain"));
    }
    if self_maps && !first.is_self_map() {
        return Err(Error::invalid("common fixed points need self-maps"));
    }
    Ok(())
}

fn run(
    maps: &[&DigitalMap],
    with_identity: bool,
    goal: Goal,
    budget: EnumerationBudget,
) -> Result<HomotopySpectrumResult> {
    check_family(maps, with_identity)?;
    let n = maps[0].domain().len();
    let mut meter = Meter::new(budget);
    let grouped = group_classes(maps, &mut meter);
    let stages: Vec<Stage<'_>> = grouped
        .pools
        .iter()
        .zip(&grouped.multiplicity)
        .map(|(pool, &k)| Stage { pool, max_picks: k })
        .collect();
    let id: Values = (0..n as u32).collect();
    let seed = with_identity.then_some(id.as_slice());
    let out = equalizer_search(n, seed, &stages, goal, &mut meter);
    let values = out.per_level.last().cloned().unwrap_or_default();
    let exact = grouped.complete && out.exact;
    let spectrum = Spectrum::new(values, exact, Some(maps.len()));
    Ok(HomotopySpectrumResult {
        min_value: spectrum.min(),
        values: spectrum,
        classes_complete: grouped.complete,
    })
}

/// `HCS(f_1, ..., f_i) = {#C(g_1, ..., g_i) : g_j ≃ f_j}`.
pub fn hcs(maps: &[&DigitalMap], budget: EnumerationBudget) -> Result<HomotopySpectrumResult> {
    run(maps, false, Goal::AllValues, budget)
}

/// `HFS(f_1, ..., f_i) = {#CF(g_1, ..., g_i) : g_j ≃ f_j}`; the identity
/// joins every equalizer undeformed.
pub fn hfs(maps: &[&DigitalMap], budget: EnumerationBudget) -> Result<HomotopySpectrumResult> {
    run(maps, true, Goal::AllValues, budget)
}

/// `MC(f_1, ..., f_i)` and whether it is exact. An inexact value is an upper
/// bound.
pub fn mc(maps: &[&DigitalMap], budget: EnumerationBudget) -> Result<(usize, bool)> {
    let r = run(maps, false, Goal::Minimum, budget)?;
    Ok((r.min_value.unwrap_or(maps[0].domain().len()), r.values.is_exact()))
}

/// `MCF(f_1, ..., f_i)` and whether it is exact.
pub fn mcf(maps: &[&DigitalMap], budget: EnumerationBudget) -> Result<(usize, bool)> {
    let r = run(maps, true, Goal::Minimum, budget)?;
    Ok((r.min_value.unwrap_or(maps[0].domain().len()), r.values.is_exact()))
}

fn sequence_for(f: &DigitalMap, j_max: usize, budget: EnumerationBudget) -> SelfCoincidenceSequence {
    let n = f.domain().len();
    let mut meter = Meter::new(budget);
    let class = homotopy_class_with(f, &mut meter);
    let pool: Vec<Values> = class.assignments().map(to_values).collect();
    let out = equalizer_search(
        n,
        None,
        &[Stage {
            pool: &pool,
            max_picks: j_max,
        }],
        Goal::Minimum,
        &mut meter,
    );
    let exact = class.is_complete() && out.exact;
    let entries = out
        .per_level
        .iter()
        .enumerate()
        .map(|(k, values)| SelfCoincidenceEntry {
            j: k + 1,
            value: values.first().copied().unwrap_or(n),
            // a single map always agrees with itself everywhere
            exact: k == 0 || exact,
        })
        .collect();
    SelfCoincidenceSequence { entries }
}

/// `m_1(X), ..., m_{j_max}(X)` with `m_j(X) = MC(id, ..., id)` (`j` copies).
pub fn self_coincidence_sequence(
    x: &Arc<DigitalImage>,
    j_max: usize,
    budget: EnumerationBudget,
) -> Result<SelfCoincidenceSequence> {
    if j_max == 0 {
        return Err(Error::invalid("j_max must be at least 1"));
    }
    Ok(sequence_for(&DigitalMap::identity(x), j_max, budget))
}

/// `m_j(f) = MC(f, ..., f)` (`j` copies) and whether it is exact.
pub fn m_j_of_map(f: &DigitalMap, j: usize, budget: EnumerationBudget) -> Result<(usize, bool)> {
    if j == 0 {
        return Err(Error::invalid("j must be at least 1"));
    }
    let e = *sequence_for(f, j, budget).entries.last().unwrap();
    Ok((e.value, e.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle, interval, Builtin};
    use std::collections::BTreeSet;

    fn unlimited() -> EnumerationBudget {
        EnumerationBudget::unlimited()
    }

    #[test]
    fn rigid_identity() {
        let x = Arc::new(build(Builtin::Figure1).unwrap());
        let id = DigitalMap::identity(&x);
        let r = hcs(&[&id, &id], unlimited()).unwrap();
        assert_eq!(r.values.to_vec(), vec![18]);
        assert_eq!(r.min_value, Some(18));
        assert!(r.values.is_exact() && r.classes_complete);
        assert_eq!(mc(&[&id, &id], unlimited()).unwrap(), (18, true));
        assert_eq!(hfs(&[&id], unlimited()).unwrap().values.to_vec(), vec![18]);
        let seq = self_coincidence_sequence(&x, 4, unlimited()).unwrap();
        assert_eq!(seq.values(), vec![18; 4]);
    }

    #[test]
    fn constants_into_interval() {
        let x = Arc::new(interval(0, 3));
        let c = DigitalMap::constant(&x, &x, 0).unwrap();
        let r = hcs(&[&c, &c], unlimited()).unwrap();
        assert_eq!(r.values.to_vec(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn distinct_constants() {
        let x = Arc::new(cycle(4));
        let a = DigitalMap::constant(&x, &x, 0).unwrap();
        let b = DigitalMap::constant(&x, &x, 2).unwrap();
        assert_eq!(mc(&[&a, &b], unlimited()).unwrap(), (0, true));
        let id = DigitalMap::identity(&x);
        assert_eq!(mc(&[&id, &a], unlimited()).unwrap(), (0, true));
    }

    #[test]
    fn c4_identity_pair() {
        let x = Arc::new(cycle(4));
        let id = DigitalMap::identity(&x);
        assert_eq!(hcs(&[&id, &id], unlimited()).unwrap().values.to_vec(), vec![0, 1, 2, 3, 4]);
        let seq = self_coincidence_sequence(&x, 4, unlimited()).unwrap();
        assert_eq!(seq.values(), vec![4, 0, 0, 0]);
        assert!(seq.is_exact() && seq.is_non_increasing());
    }

    #[test]
    fn hfs_of_constant_on_c4() {
        let x = Arc::new(cycle(4));
        let c = DigitalMap::constant(&x, &x, 0).unwrap();
        // oracle: fixed point counts over the full class of c
        let class = crate::homotopy::homotopy_class(&c, unlimited());
        let oracle: BTreeSet<usize> = class
            .assignments()
            .map(|a| a.iter().enumerate().filter(|(p, &v)| *p == v).count())
            .collect();
        assert_eq!(oracle, (0..=4).collect());
        assert_eq!(hfs(&[&c], unlimited()).unwrap().values.values(), &oracle);
        assert_eq!(mcf(&[&c], unlimited()).unwrap(), (0, true));
    }

    #[test]
    fn hfs_grows_with_repeats() {
        let x = Arc::new(build(Builtin::Tee4).unwrap());
        let f = DigitalMap::from_assignment(&x, &x, vec![1, 1, 2, 1]).unwrap();
        let two = hfs(&[&f, &f], unlimited()).unwrap();
        let three = hfs(&[&f, &f, &f], unlimited()).unwrap();
        assert!(two.values.is_subset(&three.values));
    }

    #[test]
    fn m_j_of_rotation() {
        let x = Arc::new(cycle(5));
        let rot = DigitalMap::from_assignment(&x, &x, vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(m_j_of_map(&rot, 1, unlimited()).unwrap(), (5, true));
        assert_eq!(m_j_of_map(&rot, 2, unlimited()).unwrap(), (0, true));
        assert!(m_j_of_map(&rot, 0, unlimited()).is_err());
    }

    #[test]
    fn errors() {
        let x = Arc::new(cycle(4));
        let y = Arc::new(cycle(5));
        let f = DigitalMap::identity(&x);
        let g = DigitalMap::identity(&y);
        assert!(hcs(&[&f, &g], unlimited()).is_err());
        assert!(hcs(&[], unlimited()).is_err());
        let h = DigitalMap::constant(&x, &y, 0).unwrap();
        assert!(hfs(&[&h], unlimited()).is_err());
        assert!(self_coincidence_sequence(&x, 0, unlimited()).is_err());
    }
}
