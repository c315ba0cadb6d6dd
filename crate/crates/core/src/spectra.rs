//! Coincidence spectra `CS_i(X,Y)`, the fixed point spectrum `F(X)` and common
//! fixed point spectra `CFS_i(X)`.
//!
//! `C(f_1, ..., f_i)` only depends on the *set* of distinct maps, so a
//! spectrum over `i`-tuples is a spectrum over nonempty sets of at most `i`
//! maps. The search grows such sets one map at a time. Its state is the
//! common restriction of the chosen maps to their equalizer (a partial map),
//! which is exactly what decides every future equalizer; states are
//! deduplicated so the search runs over partial maps rather than subsets.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use indexmap::IndexSet;
use serde::Serialize;

use crate::enumeration::{continuous_assignments, for_each_continuous_map, EnumerationBudget, Meter};
use crate::error::{Error, Result};
use crate::image::DigitalImage;

/// A finite set of achievable sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    values: BTreeSet<usize>,
    /// False when a budget tripped; the values are then a subset of the true
    /// spectrum.
    exact: bool,
    /// Number of maps the spectrum was computed for; `None` for unions.
    arity: Option<usize>,
}

impl Spectrum {
    pub fn new(values: impl IntoIterator<Item = usize>, exact: bool, arity: Option<usize>) -> Self {
        Spectrum {
            values: values.into_iter().collect(),
            exact,
            arity,
        }
    }

    pub fn values(&self) -> &BTreeSet<usize> {
        &self.values
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values.iter().copied().collect()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn arity(&self) -> Option<usize> {
        self.arity
    }

    pub fn contains(&self, v: usize) -> bool {
        self.values.contains(&v)
    }

    pub fn min(&self) -> Option<usize> {
        self.values.first().copied()
    }

    pub fn is_subset(&self, other: &Spectrum) -> bool {
        self.values.is_subset(&other.values)
    }

    /// `{0, 1, ..., n}`.
    pub fn is_full_range(&self, n: usize) -> bool {
        self.values.len() == n + 1 && self.values.iter().copied().eq(0..=n)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")?;
        if !self.exact {
            write!(f, " (partial)")?;
        }
        Ok(())
    }
}

/// Raw map values as used by the search.
pub(crate) type Values = Vec<u32>;

pub(crate) fn to_values(a: &[usize]) -> Values {
    a.iter().map(|&v| v as u32).collect()
}

const UNDEFINED: u32 = u32::MAX;

/// Common values of the chosen maps on their equalizer, `UNDEFINED` elsewhere.
type State = Box<[u32]>;

fn restrict(state: &[u32], g: &[u32]) -> State {
    state
        .iter()
        .zip(g)
        .map(|(&s, &v)| if s == v { s } else { UNDEFINED })
        .collect()
}

fn size(state: &[u32]) -> usize {
    state.iter().filter(|&&v| v != UNDEFINED).count()
}

/// What the caller needs from the final stage, which decides when the search
/// may stop early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Every achievable size; stops once `0..=n` are all seen.
    AllValues,
    /// Only the smallest size per level; stops once 0 is seen.
    Minimum,
}

/// Maps chosen from one pool: at least one and at most `max_picks` distinct.
pub(crate) struct Stage<'a> {
    pub pool: &'a [Values],
    pub max_picks: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    /// Entry `j` holds the sizes reachable with at most `j + 1` picks from the
    /// final stage. Under [`Goal::Minimum`] only the minimum of each entry is
    /// guaranteed.
    pub per_level: Vec<BTreeSet<usize>>,
    pub exact: bool,
}

struct Tally {
    seen: Vec<bool>,
    distinct: usize,
    goal: Goal,
}

impl Tally {
    fn record(&mut self, s: usize) -> bool {
        if !self.seen[s] {
            self.seen[s] = true;
            self.distinct += 1;
        }
        self.done()
    }

    fn done(&self) -> bool {
        match self.goal {
            Goal::AllValues => self.distinct == self.seen.len(),
            Goal::Minimum => self.seen[0],
        }
    }

    fn values(&self) -> BTreeSet<usize> {
        (0..self.seen.len()).filter(|&k| self.seen[k]).collect()
    }
}

/// Equalizer sizes of `seed ∪ S_1 ∪ ... ∪ S_r`, where `S_c` is a nonempty set
/// of at most `stages[c].max_picks` maps from `stages[c].pool`.
pub(crate) fn equalizer_search(
    n: usize,
    seed: Option<&[u32]>,
    stages: &[Stage<'_>],
    goal: Goal,
    meter: &mut Meter,
) -> SearchOutcome {
    assert!(!stages.is_empty());
    let last = stages.len() - 1;
    let mut states: IndexSet<State> = IndexSet::new();
    let mut tally = Tally {
        seen: vec![false; n + 1],
        distinct: 0,
        goal,
    };
    let mut per_level = Vec::new();

    for (c, stage) in stages.iter().enumerate() {
        assert!(stage.max_picks >= 1);
        let is_final = c == last;
        let mut cumulative: IndexSet<State> = IndexSet::new();

        // first pick
        if c == 0 && seed.is_none() {
            for g in stage.pool {
                if !meter.tick() {
                    return cut_short(per_level, &tally, stage.max_picks);
                }
                cumulative.insert(g.clone().into_boxed_slice());
                if is_final && tally.record(n) {
                    return finish(per_level, &tally, stage.max_picks);
                }
            }
        } else {
            let start: Vec<State> = if c == 0 {
                vec![seed.unwrap().to_vec().into_boxed_slice()]
            } else {
                states.into_iter().collect()
            };
            for s in &start {
                for g in stage.pool {
                    if !meter.tick() {
                        return cut_short(per_level, &tally, stage.max_picks);
                    }
                    let t = restrict(s, g);
                    let k = size(&t);
                    if cumulative.insert(t) && is_final && tally.record(k) {
                        return finish(per_level, &tally, stage.max_picks);
                    }
                }
            }
        }
        if is_final {
            per_level.push(tally.values());
        }

        let mut frontier: Vec<State> = cumulative.iter().cloned().collect();
        let mut picks = 1;
        while picks < stage.max_picks && !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for g in stage.pool {
                    if !meter.tick() {
                        return cut_short(per_level, &tally, stage.max_picks);
                    }
                    let t = restrict(s, g);
                    if cumulative.contains(&t) {
                        continue;
                    }
                    let k = size(&t);
                    cumulative.insert(t.clone());
                    next.push(t);
                    if is_final && tally.record(k) {
                        return finish(per_level, &tally, stage.max_picks);
                    }
                }
            }
            frontier = next;
            picks += 1;
            if is_final {
                per_level.push(tally.values());
            }
        }
        if is_final {
            while per_level.len() < stage.max_picks {
                per_level.push(tally.values());
            }
        }
        states = cumulative;
    }
    SearchOutcome {
        per_level,
        exact: true,
    }
}

/// Goal reached: later levels only grow, so they share the current values.
fn finish(mut per_level: Vec<BTreeSet<usize>>, tally: &Tally, levels: usize) -> SearchOutcome {
    while per_level.len() < levels {
        per_level.push(tally.values());
    }
    SearchOutcome {
        per_level,
        exact: true,
    }
}

fn cut_short(mut per_level: Vec<BTreeSet<usize>>, tally: &Tally, levels: usize) -> SearchOutcome {
    while per_level.len() < levels {
        per_level.push(tally.values());
    }
    SearchOutcome {
        per_level,
        exact: false,
    }
}

fn all_maps(x: &DigitalImage, y: &DigitalImage, meter: &mut Meter) -> (Vec<Values>, bool) {
    let (raw, exhausted) = continuous_assignments(x, y, meter);
    (raw.iter().map(|a| to_values(a)).collect(), exhausted)
}

/// Per-arity coincidence spectra `CS_1, ..., CS_{i_max}` from one search.
fn coincidence_levels(
    x: &DigitalImage,
    y: &DigitalImage,
    i_max: usize,
    budget: EnumerationBudget,
) -> Vec<Spectrum> {
    let mut meter = Meter::new(budget);
    let (pool, exhausted) = all_maps(x, y, &mut meter);
    if pool.is_empty() {
        // only reachable when the enumeration budget tripped immediately
        return (1..=i_max).map(|i| Spectrum::new([], false, Some(i))).collect();
    }
    let out = equalizer_search(
        x.len(),
        None,
        &[Stage {
            pool: &pool,
            max_picks: i_max,
        }],
        Goal::AllValues,
        &mut meter,
    );
    let exact = exhausted && out.exact;
    out.per_level
        .into_iter()
        .enumerate()
        .map(|(j, v)| Spectrum::new(v, exact, Some(j + 1)))
        .collect()
}

/// `CS_i(X, Y)`. For `i = 1` this is `{#X}`.
pub fn coincidence_spectrum(
    x: &DigitalImage,
    y: &DigitalImage,
    i: usize,
    budget: EnumerationBudget,
) -> Result<Spectrum> {
    if i == 0 {
        return Err(Error::invalid("spectrum arity must be at least 1"));
    }
    if i == 1 {
        return Ok(Spectrum::new([x.len()], true, Some(1)));
    }
    Ok(coincidence_levels(x, y, i, budget).pop().unwrap())
}

/// `CS_2 ∪ ... ∪ CS_{i_max}` with the individual spectra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumUnion {
    pub union: Spectrum,
    /// `per_arity[k]` is `CS_{k+2}`.
    pub per_arity: Vec<Spectrum>,
    /// Smallest `i` with `CS_i = CS_{i_max}`, when every level is exact.
    pub stabilized_at: Option<usize>,
}

pub fn coincidence_spectrum_union(
    x: &DigitalImage,
    y: &DigitalImage,
    i_max: usize,
    budget: EnumerationBudget,
) -> Result<SpectrumUnion> {
    if i_max < 2 {
        return Err(Error::invalid("i_max must be at least 2"));
    }
    let per_arity: Vec<Spectrum> = coincidence_levels(x, y, i_max, budget).split_off(1);
    Ok(union_of(per_arity))
}

fn union_of(per_arity: Vec<Spectrum>) -> SpectrumUnion {
    let exact = per_arity.iter().all(Spectrum::is_exact);
    let values: BTreeSet<usize> = per_arity.iter().flat_map(|s| s.values.iter().copied()).collect();
    let first = per_arity[0].arity.unwrap();
    let stabilized_at = if exact {
        let top = &per_arity.last().unwrap().values;
        per_arity
            .iter()
            .position(|s| &s.values == top)
            .map(|k| k + first)
    } else {
        None
    };
    SpectrumUnion {
        union: Spectrum::new(values, exact, None),
        per_arity,
        stabilized_at,
    }
}

/// `F(X) = {#Fix(f) : f a continuous self-map}`.
pub fn fixed_point_spectrum(x: &DigitalImage, budget: EnumerationBudget) -> Spectrum {
    let n = x.len();
    let mut meter = Meter::new(budget);
    let mut seen = vec![false; n + 1];
    let mut distinct = 0;
    let mut saturated = false;
    let exhausted = for_each_continuous_map(x, x, &mut meter, |a| {
        let k = a.iter().enumerate().filter(|(p, &v)| *p == v).count();
        if !seen[k] {
            seen[k] = true;
            distinct += 1;
            if distinct == n + 1 {
                saturated = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Spectrum::new(
        (0..=n).filter(|&k| seen[k]),
        exhausted || saturated,
        Some(1),
    )
}

fn identity_values(n: usize) -> Values {
    (0..n as u32).collect()
}

fn common_fixed_levels(x: &DigitalImage, i_max: usize, budget: EnumerationBudget) -> Vec<Spectrum> {
    let mut meter = Meter::new(budget);
    let (pool, exhausted) = all_maps(x, x, &mut meter);
    if pool.is_empty() {
        return (1..=i_max).map(|i| Spectrum::new([], false, Some(i))).collect();
    }
    let id = identity_values(x.len());
    let out = equalizer_search(
        x.len(),
        Some(&id),
        &[Stage {
            pool: &pool,
            max_picks: i_max,
        }],
        Goal::AllValues,
        &mut meter,
    );
    let exact = exhausted && out.exact;
    out.per_level
        .into_iter()
        .enumerate()
        .map(|(j, v)| Spectrum::new(v, exact, Some(j + 1)))
        .collect()
}

/// `CFS_i(X)`: sizes of `CF(f_1, ..., f_i) = C(f_1, ..., f_i, id)`.
pub fn common_fixed_spectrum(x: &DigitalImage, i: usize, budget: EnumerationBudget) -> Result<Spectrum> {
    if i == 0 {
        return Err(Error::invalid("spectrum arity must be at least 1"));
    }
    Ok(common_fixed_levels(x, i, budget).pop().unwrap())
}

/// `CFS_1 ∪ ... ∪ CFS_{i_max}`.
pub fn common_fixed_spectrum_union(
    x: &DigitalImage,
    i_max: usize,
    budget: EnumerationBudget,
) -> Result<SpectrumUnion> {
    if i_max == 0 {
        return Err(Error::invalid("i_max must be at least 1"));
    }
    Ok(union_of(common_fixed_levels(x, i_max, budget)))
}
