//! Exhaustive generation of continuous maps and one-step homotopy neighbors.
//!
//! Every search here is a backtracking over the domain points in per-component
//! breadth-first order, so each point after the first of its component has an
//! already assigned neighbor and a partial assignment is abandoned the moment
//! an edge maps to two points that are neither equal nor adjacent. Candidate
//! values are tried in ascending index order, which fixes the output order.

use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::DigitalMap;

/// Images at or below this size get unlimited budgets by default.
pub const UNLIMITED_UP_TO: usize = 10;
/// Node budget used for larger images unless the caller picks one.
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
/// Time budget used for larger images unless the caller picks one.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

/// Resource limits for a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_results: Option<u64>,
    pub max_nodes: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl EnumerationBudget {
    pub const fn unlimited() -> Self {
        EnumerationBudget {
            max_results: None,
            max_nodes: None,
            time_budget: None,
        }
    }

    /// Unlimited when both images have at most [`UNLIMITED_UP_TO`] points,
    /// otherwise [`DEFAULT_MAX_NODES`] nodes and [`DEFAULT_TIME_BUDGET`].
    pub fn default_for(domain_len: usize, codomain_len: usize) -> Self {
        if domain_len <= UNLIMITED_UP_TO && codomain_len <= UNLIMITED_UP_TO {
            Self::unlimited()
        } else {
            EnumerationBudget {
                max_results: None,
                max_nodes: Some(DEFAULT_MAX_NODES),
                time_budget: Some(DEFAULT_TIME_BUDGET),
            }
        }
    }

    pub fn with_max_results(mut self, n: u64) -> Self {
        self.max_results = Some(n);
        self
    }

    pub fn with_max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = Some(n);
        self
    }

    pub fn with_time_budget(mut self, d: Duration) -> Self {
        self.time_budget = Some(d);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_results == Some(0) || self.max_nodes == Some(0) {
            return Err(Error::invalid("budget limits must be positive"));
        }
        if self.time_budget == Some(Duration::ZERO) {
            return Err(Error::invalid("time budget must be positive"));
        }
        Ok(())
    }

    pub fn is_unlimited(&self) -> bool {
        *self == Self::unlimited()
    }
}

/// Running account of one computation against its budget.
///
/// One meter is threaded through every search that belongs to the same
/// computation, so nested searches share node and time limits.
#[derive(Debug, Clone)]
pub struct Meter {
    budget: EnumerationBudget,
    nodes: u64,
    started: Instant,
    tripped: bool,
}

impl Meter {
    pub fn new(budget: EnumerationBudget) -> Self {
        Meter {
            budget,
            nodes: 0,
            started: Instant::now(),
            tripped: false,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(EnumerationBudget::unlimited())
    }

    pub fn budget(&self) -> &EnumerationBudget {
        &self.budget
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn tripped(&self) -> bool {
        self.tripped
    }

    pub(crate) fn trip(&mut self) {
        self.tripped = true;
    }

    /// Counts `n` units of work. Returns false once any limit is exceeded.
    pub fn charge(&mut self, n: u64) -> bool {
        if self.tripped {
            return false;
        }
        let before = self.nodes;
        self.nodes += n;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.tripped = true;
                return false;
            }
        }
        if let Some(limit) = self.budget.time_budget {
            // checking the clock on every node is measurable
            if before >> 10 != self.nodes >> 10 && self.started.elapsed() > limit {
                self.tripped = true;
                return false;
            }
        }
        true
    }

    #[inline]
    pub fn tick(&mut self) -> bool {
        self.charge(1)
    }
}

/// Maps produced by a search together with whether the search space was
/// fully covered.
#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub items: Vec<DigitalMap>,
    pub exhausted: bool,
}

/// Backtracking plan: domain order, per-point candidate lists, and for each
/// depth the domain neighbors already placed.
struct Plan<'a> {
    codomain: &'a DigitalImage,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Plan<'a> {
    fn new(domain: &DigitalImage, codomain: &'a DigitalImage, candidates: Vec<Vec<usize>>) -> Self {
        Self::over(domain, codomain, domain.bfs_order(), candidates)
    }

    fn over(
        domain: &DigitalImage,
        codomain: &'a DigitalImage,
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
    ) -> Self {
        let mut placed = vec![false; domain.len()];
        let mut earlier = Vec::with_capacity(order.len());
        for &x in &order {
            earlier.push(
                domain
                    .adjacent_points(x)
                    .iter()
                    .copied()
                    .filter(|&y| placed[y])
                    .collect(),
            );
            placed[x] = true;
        }
        Plan {
            codomain,
            order,
            earlier,
            candidates,
        }
    }

    /// Visits every complete assignment. Returns true when the whole space was
    /// covered, false when the meter tripped or the visitor broke off.
    fn run<F>(&self, meter: &mut Meter, assignment: &mut [usize], visit: &mut F) -> bool
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.descend(0, meter, assignment, visit).is_continue()
    }

    fn descend<F>(
        &self,
        depth: usize,
        meter: &mut Meter,
        assignment: &mut [usize],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(assignment);
        }
        let x = self.order[depth];
        for &v in &self.candidates[x] {
            if !meter.tick() {
                return ControlFlow::Break(());
            }
            let ok = self.earlier[depth]
                .iter()
                .all(|&y| self.codomain.is_adjacent_or_equal(assignment[y], v));
            if ok {
                assignment[x] = v;
                self.descend(depth + 1, meter, assignment, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn all_candidates(domain: &DigitalImage, codomain: &DigitalImage) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..codomain.len()).collect();
    vec![all; domain.len()]
}

/// Streams every continuous map `domain -> codomain` as a raw assignment, in
/// canonical order. Returns true when the space was exhausted.
pub fn for_each_continuous_map<F>(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    meter: &mut Meter,
    mut visit: F,
) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let plan = Plan::new(domain, codomain, all_candidates(domain, codomain));
    let mut assignment = vec![0; domain.len()];
    plan.run(meter, &mut assignment, &mut visit)
}

/// Streams the continuous maps `g` with `g(x)` in the closed neighborhood of
/// `f(x)` for every `x`; `f` itself is among them.
pub fn for_each_one_step_neighbor<F>(
    f_domain: &DigitalImage,
    f_codomain: &DigitalImage,
    f: &[usize],
    meter: &mut Meter,
    visit: F,
) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let candidates = f
        .iter()
        .map(|&v| {
            f_codomain
                .neighbors(v, true)
                .expect("map values are codomain indices")
        })
        .collect();
    let plan = Plan::new(f_domain, f_codomain, candidates);
    let mut assignment = vec![0; f_domain.len()];
    let mut visit = visit;
    plan.run(meter, &mut assignment, &mut visit)
}

/// Collects raw assignments, honoring `max_results` from the meter's budget.
fn collect_limited<S>(meter: &mut Meter, search: S) -> (Vec<Vec<usize>>, bool)
where
    S: FnOnce(&mut Meter, &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> bool,
{
    let cap = meter.budget().max_results;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut over_cap = false;
    let covered = search(meter, &mut |a| {
        if cap.is_some_and(|c| out.len() as u64 >= c) {
            over_cap = true;
            return ControlFlow::Break(());
        }
        out.push(a.to_vec());
        ControlFlow::Continue(())
    });
    if over_cap {
        meter.trip();
    }
    (out, covered && !over_cap)
}

/// All continuous maps as raw assignments, in canonical order.
pub fn continuous_assignments(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    meter: &mut Meter,
) -> (Vec<Vec<usize>>, bool) {
    collect_limited(meter, |m, visit| {
        for_each_continuous_map(domain, codomain, m, visit)
    })
}

/// One-step neighbors of `f` as raw assignments, in canonical order.
pub fn one_step_assignments(f: &DigitalMap, meter: &mut Meter) -> (Vec<Vec<usize>>, bool) {
    collect_limited(meter, |m, visit| {
        for_each_one_step_neighbor(f.domain(), f.codomain(), f.assignment(), m, visit)
    })
}

fn wrap(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    raw: Vec<Vec<usize>>,
) -> Vec<DigitalMap> {
    raw.into_iter()
        .map(|a| DigitalMap::from_trusted(domain, codomain, a))
        .collect()
}

/// Every continuous map `domain -> codomain`, each exactly once, in canonical
/// order.
pub fn enumerate_continuous_maps(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    budget: EnumerationBudget,
) -> EnumerationOutcome {
    let mut meter = Meter::new(budget);
    let (raw, exhausted) = continuous_assignments(domain, codomain, &mut meter);
    EnumerationOutcome {
        items: wrap(domain, codomain, raw),
        exhausted,
    }
}

/// The maps of [`enumerate_continuous_maps`] whose first point in search
/// order (index 0) is sent to `first_value`.
pub fn enumerate_branch(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    first_value: usize,
    budget: EnumerationBudget,
) -> Result<EnumerationOutcome> {
    if first_value >= codomain.len() {
        return Err(Error::invalid(format!(
            "branch value {first_value} outside the codomain"
        )));
    }
    let mut candidates = all_candidates(domain, codomain);
    candidates[0] = vec![first_value];
    let plan = Plan::new(domain, codomain, candidates);
    let mut meter = Meter::new(budget);
    let mut assignment = vec![0; domain.len()];
    let (raw, exhausted) = collect_limited(&mut meter, |m, visit| {
        plan.run(m, &mut assignment, &mut |a| visit(a))
    });
    Ok(EnumerationOutcome {
        items: wrap(domain, codomain, raw),
        exhausted,
    })
}

/// Explores the first-value branches in parallel and concatenates them in
/// branch order, which reproduces the canonical sequence. The budget applies
/// to each branch separately.
pub fn enumerate_continuous_maps_parallel(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    budget: EnumerationBudget,
) -> EnumerationOutcome {
    let branches: Vec<EnumerationOutcome> = (0..codomain.len())
        .into_par_iter()
        .map(|v| enumerate_branch(domain, codomain, v, budget).expect("value in range"))
        .collect();
    let exhausted = branches.iter().all(|b| b.exhausted);
    EnumerationOutcome {
        items: branches.into_iter().flat_map(|b| b.items).collect(),
        exhausted,
    }
}

/// Number of continuous maps without materializing them. Components of the
/// domain are counted separately and multiplied.
pub fn count_continuous_maps(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    budget: EnumerationBudget,
) -> (u128, bool) {
    let mut meter = Meter::new(budget);
    let mut total: u128 = 1;
    for block in domain.components() {
        let order = bfs_within(domain, &block);
        let plan = Plan::over(domain, codomain, order, all_candidates(domain, codomain));
        let mut assignment = vec![0; domain.len()];
        let mut count: u128 = 0;
        let covered = plan.run(&mut meter, &mut assignment, &mut |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        total = total.saturating_mul(count);
        if !covered {
            return (total, false);
        }
    }
    (total, true)
}

fn bfs_within(domain: &DigitalImage, block: &[usize]) -> Vec<usize> {
    let full = domain.bfs_order();
    // bfs_order visits each component contiguously from its lowest index
    let start = full.iter().position(|&x| x == block[0]).unwrap();
    full[start..start + block.len()].to_vec()
}

/// Every continuous `g` with `g(x) ∈ N*(f(x))` for all `x`, including `f`.
pub fn one_step_neighbors(f: &DigitalMap, budget: EnumerationBudget) -> EnumerationOutcome {
    let mut meter = Meter::new(budget);
    let (raw, exhausted) = one_step_assignments(f, &mut meter);
    EnumerationOutcome {
        items: wrap(f.domain(), f.codomain(), raw),
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle, discrete, interval, Builtin};
    use crate::maps::is_continuous;

    fn brute_force(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
        let n = x.len();
        let m = y.len();
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % m;
                        code /= m;
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|a| is_continuous(x, y, a).unwrap())
            .collect()
    }

    fn arc(img: DigitalImage) -> Arc<DigitalImage> {
        Arc::new(img)
    }

    #[test]
    fn single_point_domain() {
        let x = arc(build(Builtin::Singleton).unwrap());
        let y = arc(cycle(5));
        let out = enumerate_continuous_maps(&x, &y, EnumerationBudget::unlimited());
        assert_eq!(out.items.len(), 5);
        assert!(out.exhausted);
    }

    #[test]
    fn interval_self_maps() {
        let x = arc(interval(0, 1));
        let out = enumerate_continuous_maps(&x, &x, EnumerationBudget::unlimited());
        assert_eq!(out.items.len(), 4);
        assert_eq!(brute_force(&x, &x).len(), 4);
    }

    #[test]
    fn triangle_is_complete() {
        let x = arc(cycle(3));
        assert_eq!(count_continuous_maps(&x, &x, EnumerationBudget::unlimited()), (27, true));
    }

    #[test]
    fn counts() {
        let s = build(Builtin::Singleton).unwrap();
        assert_eq!(count_continuous_maps(&cycle(5), &s, EnumerationBudget::unlimited()), (1, true));
        let d = discrete(2);
        assert_eq!(count_continuous_maps(&d, &d, EnumerationBudget::unlimited()), (4, true));
        // frozen from brute force over 4^4 functions
        let c4 = cycle(4);
        assert_eq!(brute_force(&c4, &c4).len(), 84);
        assert_eq!(count_continuous_maps(&c4, &c4, EnumerationBudget::unlimited()), (84, true));
    }

    #[test]
    fn product_count_matches_enumeration_on_disconnected_domain() {
        let x = DigitalImage::new(
            1,
            (0..5).map(|i| vec![i].into()).collect(),
            crate::image::AdjacencySpec::Explicit(vec![(0, 1), (2, 3)]),
            None,
        )
        .unwrap();
        let y = cycle(4);
        let expected = brute_force(&x, &y).len() as u128;
        assert_eq!(count_continuous_maps(&x, &y, EnumerationBudget::unlimited()), (expected, true));
    }

    #[test]
    fn canonical_order_is_deterministic_and_duplicate_free() {
        let x = arc(cycle(4));
        let y = arc(build(Builtin::Tee4).unwrap());
        let a = enumerate_continuous_maps(&x, &y, EnumerationBudget::unlimited());
        let b = enumerate_continuous_maps(&x, &y, EnumerationBudget::unlimited());
        assert_eq!(a.items, b.items);
        let mut sorted: Vec<_> = a.items.iter().map(|m| m.assignment().to_vec()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), a.items.len());
        let mut oracle = brute_force(&x, &y);
        oracle.sort();
        assert_eq!(sorted, oracle);
    }

    #[test]
    fn parallel_branches_reproduce_sequence() {
        let x = arc(cycle(5));
        let y = arc(cycle(4));
        let seq = enumerate_continuous_maps(&x, &y, EnumerationBudget::unlimited());
        let par = enumerate_continuous_maps_parallel(&x, &y, EnumerationBudget::unlimited());
        assert_eq!(seq.items, par.items);
        assert!(par.exhausted);
        assert!(enumerate_branch(&x, &y, 4, EnumerationBudget::unlimited()).is_err());
    }

    #[test]
    fn budgets_flag_truncation() {
        let x = arc(cycle(4));
        let out = enumerate_continuous_maps(&x, &x, EnumerationBudget::unlimited().with_max_results(10));
        assert_eq!(out.items.len(), 10);
        assert!(!out.exhausted);
        let exact = enumerate_continuous_maps(&x, &x, EnumerationBudget::unlimited().with_max_results(84));
        assert_eq!(exact.items.len(), 84);
        assert!(exact.exhausted);
        let out = enumerate_continuous_maps(&x, &x, EnumerationBudget::unlimited().with_max_nodes(20));
        assert!(!out.exhausted);
        let (_, done) = count_continuous_maps(&x, &x, EnumerationBudget::unlimited().with_max_nodes(20));
        assert!(!done);
    }

    #[test]
    fn budget_validation_and_defaults() {
        assert!(EnumerationBudget::unlimited().with_max_nodes(0).validate().is_err());
        assert!(EnumerationBudget::unlimited().with_time_budget(Duration::ZERO).validate().is_err());
        assert!(EnumerationBudget::default_for(10, 8).is_unlimited());
        assert_eq!(EnumerationBudget::default_for(18, 18).max_nodes, Some(DEFAULT_MAX_NODES));
    }

    #[test]
    fn one_step_of_identity_on_figure1_is_trivial() {
        let x = arc(build(Builtin::Figure1).unwrap());
        let id = DigitalMap::identity(&x);
        let out = one_step_neighbors(&id, EnumerationBudget::unlimited());
        assert!(out.exhausted);
        assert_eq!(out.items, vec![id]);
    }

    #[test]
    fn one_step_of_identity_on_c4() {
        let x = arc(cycle(4));
        let id = DigitalMap::identity(&x);
        let out = one_step_neighbors(&id, EnumerationBudget::unlimited());
        // brute force over the 3^4 closed-neighborhood candidates
        let oracle: Vec<_> = brute_force(&x, &x)
            .into_iter()
            .filter(|g| g.iter().enumerate().all(|(i, &v)| x.is_adjacent_or_equal(i, v)))
            .collect();
        assert_eq!(oracle.len(), 29);
        assert_eq!(out.items.len(), 29);
        assert!(out.items.contains(&id));
        let rot = DigitalMap::from_assignment(&x, &x, vec![1, 2, 3, 0]).unwrap();
        assert!(out.items.contains(&rot));
    }

    #[test]
    fn one_step_on_discrete_is_trivial() {
        let x = arc(discrete(3));
        let c = DigitalMap::constant(&x, &x, 1).unwrap();
        assert_eq!(one_step_neighbors(&c, EnumerationBudget::unlimited()).items, vec![c]);
    }
}
