//! Digital homotopy between continuous maps.
//!
//! A homotopy of any length is a chain of one-step homotopies through
//! continuous maps, so homotopy classes are the connected components of the
//! one-step relation and are computed by breadth-first search over it.

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::enumeration::{for_each_one_step_neighbor, EnumerationBudget, Meter};
use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::DigitalMap;

/// Three-way answer of a budgeted semi-decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No,
    Unknown,
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        }
    }
}

/// A chain `f = h_0, h_1, ..., h_m = g` of consecutive one-step homotopies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub chain: Vec<DigitalMap>,
}

impl HomotopyWitness {
    pub fn first(&self) -> &DigitalMap {
        &self.chain[0]
    }

    pub fn last(&self) -> &DigitalMap {
        self.chain.last().unwrap()
    }

    /// Number of maps in the chain; a map is homotopic to itself by a chain of
    /// length one.
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Checks every link and that the chain runs from `f` to `g`.
    pub fn validates(&self, f: &DigitalMap, g: &DigitalMap) -> bool {
        !self.chain.is_empty()
            && self.first() == f
            && self.last() == g
            && self.chain.iter().all(|h| {
                crate::maps::is_continuous(h.domain(), h.codomain(), h.assignment())
                    == Ok(true)
            })
            && self
                .chain
                .windows(2)
                .all(|w| one_step_homotopic(&w[0], &w[1]) == Ok(true))
    }
}

/// The maps reachable from a representative by one-step homotopies.
#[derive(Debug, Clone)]
pub struct HomotopyClass {
    representative: DigitalMap,
    members: IndexSet<Vec<usize>>,
    complete: bool,
}

impl HomotopyClass {
    pub fn representative(&self) -> &DigitalMap {
        &self.representative
    }

    /// True when the closure finished within budget.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &DigitalMap) -> bool {
        g.same_images(&self.representative) && self.members.contains(g.assignment())
    }

    /// Raw assignments in discovery order; the representative comes first.
    pub fn assignments(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn members(&self) -> Vec<DigitalMap> {
        let r = &self.representative;
        self.members
            .iter()
            .map(|a| DigitalMap::from_trusted(r.domain(), r.codomain(), a.clone()))
            .collect()
    }
}

/// `f(x)` equals or is adjacent to `g(x)` at every point.
pub fn one_step_homotopic(f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    if !f.same_images(g) {
        return Err(Error::invalid("maps do not share domain and codomain"));
    }
    let y = f.codomain();
    Ok(f
        .assignment()
        .iter()
        .zip(g.assignment())
        .all(|(&a, &b)| y.is_adjacent_or_equal(a, b)))
}

struct Search {
    visited: IndexSet<Vec<usize>>,
    parent: Vec<usize>,
    complete: bool,
    hit: Option<usize>,
}

/// Breadth-first search of the one-step relation from `f`, stopping at the
/// first map accepted by `target`. `max_results` caps the number of maps
/// visited.
fn bfs<T>(f: &DigitalMap, meter: &mut Meter, target: T) -> Search
where
    T: Fn(&[usize]) -> bool,
{
    let cap = meter.budget().max_results;
    let mut visited: IndexSet<Vec<usize>> = IndexSet::new();
    let mut parent = vec![usize::MAX];
    visited.insert(f.assignment().to_vec());
    if target(f.assignment()) {
        return Search {
            visited,
            parent,
            complete: false,
            hit: Some(0),
        };
    }
    let (x, y) = (f.domain(), f.codomain());
    let mut queue = VecDeque::from([0usize]);
    let mut hit = None;
    let mut overflow = false;
    while let Some(k) = queue.pop_front() {
        let current = visited[k].clone();
        let covered = for_each_one_step_neighbor(x, y, &current, meter, |g| {
            if visited.contains(g) {
                return ControlFlow::Continue(());
            }
            if cap.is_some_and(|c| visited.len() as u64 >= c) {
                overflow = true;
                return ControlFlow::Break(());
            }
            let (idx, _) = visited.insert_full(g.to_vec());
            parent.push(k);
            if target(g) {
                hit = Some(idx);
                return ControlFlow::Break(());
            }
            queue.push_back(idx);
            ControlFlow::Continue(())
        });
        if hit.is_some() {
            break;
        }
        if !covered {
            if overflow {
                meter.trip();
            }
            return Search {
                visited,
                parent,
                complete: false,
                hit: None,
            };
        }
    }
    Search {
        complete: hit.is_none(),
        visited,
        parent,
        hit,
    }
}

fn chain_to(f: &DigitalMap, search: &Search, end: usize) -> HomotopyWitness {
    let mut idx = Vec::new();
    let mut k = end;
    while k != usize::MAX {
        idx.push(k);
        k = search.parent[k];
    }
    idx.reverse();
    HomotopyWitness {
        chain: idx
            .into_iter()
            .map(|k| DigitalMap::from_trusted(f.domain(), f.codomain(), search.visited[k].clone()))
            .collect(),
    }
}

/// Homotopy class of `f` sharing an existing meter.
pub fn homotopy_class_with(f: &DigitalMap, meter: &mut Meter) -> HomotopyClass {
    let search = bfs(f, meter, |_| false);
    HomotopyClass {
        representative: f.clone(),
        members: search.visited,
        complete: search.complete,
    }
}

/// Breadth-first closure of `{f}` under one-step homotopy.
pub fn homotopy_class(f: &DigitalMap, budget: EnumerationBudget) -> HomotopyClass {
    homotopy_class_with(f, &mut Meter::new(budget))
}

/// Decides `f ≃ g`. A `Yes` carries a shortest chain.
pub fn are_homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    budget: EnumerationBudget,
) -> Result<Decision<HomotopyWitness>> {
    if !f.same_images(g) {
        return Err(Error::invalid("maps do not share domain and codomain"));
    }
    let mut meter = Meter::new(budget);
    let search = bfs(f, &mut meter, |h| h == g.assignment());
    Ok(match search.hit {
        Some(end) => Decision::Yes(chain_to(f, &search, end)),
        None if search.complete => Decision::No,
        None => Decision::Unknown,
    })
}

/// A map is rigid iff its only one-step neighbor is itself: any chain that
/// leaves `{f}` starts with a distinct one-step neighbor.
pub fn is_rigid_map(f: &DigitalMap) -> bool {
    let mut meter = Meter::unlimited();
    let mut escaped = false;
    for_each_one_step_neighbor(f.domain(), f.codomain(), f.assignment(), &mut meter, |g| {
        if g != f.assignment() {
            escaped = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    !escaped
}

pub fn is_rigid_image(x: &Arc<DigitalImage>) -> bool {
    is_rigid_map(&DigitalMap::identity(x))
}

fn is_constant(a: &[usize]) -> bool {
    a.windows(2).all(|w| w[0] == w[1])
}

/// Greedy descent: repeatedly move to the one-step neighbor with the smallest
/// total distance to `target`, while that total strictly decreases.
fn pull_toward(f: &DigitalMap, target: usize, meter: &mut Meter) -> Option<HomotopyWitness> {
    let y = f.codomain();
    let dist = y.distances_from(target);
    let potential = |a: &[usize]| -> Option<usize> {
        a.iter().map(|&v| dist[v]).sum::<Option<usize>>()
    };
    let mut current = f.assignment().to_vec();
    let mut level = potential(&current)?;
    let mut chain = vec![f.clone()];
    while level > 0 {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let covered =
            for_each_one_step_neighbor(f.domain(), y, &current, meter, |g| {
                let p = potential(g).expect("neighbors stay in the target's component");
                if best.as_ref().is_none_or(|(b, _)| p < *b) {
                    best = Some((p, g.to_vec()));
                }
                ControlFlow::Continue(())
            });
        if !covered {
            return None;
        }
        let (p, g) = best?;
        if p >= level {
            return None;
        }
        level = p;
        current = g;
        chain.push(DigitalMap::from_trusted(f.domain(), y, current.clone()));
    }
    Some(HomotopyWitness { chain })
}

/// Whether `f` is homotopic to a constant map. Tries a greedy pull toward
/// `f(x_0)` first, then a budgeted breadth-first search.
pub fn is_nullhomotopic(f: &DigitalMap, budget: EnumerationBudget) -> Decision<HomotopyWitness> {
    if is_constant(f.assignment()) {
        return Decision::Yes(HomotopyWitness {
            chain: vec![f.clone()],
        });
    }
    let mut meter = Meter::new(budget);
    if let Some(w) = pull_toward(f, f.apply(0), &mut meter) {
        return Decision::Yes(w);
    }
    if meter.tripped() {
        return Decision::Unknown;
    }
    let search = bfs(f, &mut meter, is_constant);
    match search.hit {
        Some(end) => Decision::Yes(chain_to(f, &search, end)),
        None if search.complete => Decision::No,
        None => Decision::Unknown,
    }
}

/// Whether the identity of `x` is nullhomotopic.
pub fn is_contractible(x: &Arc<DigitalImage>, budget: EnumerationBudget) -> Decision<HomotopyWitness> {
    is_nullhomotopic(&DigitalMap::identity(x), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle, discrete, interval, Builtin};

    fn arc(b: Builtin) -> Arc<DigitalImage> {
        Arc::new(build(b).unwrap())
    }

    #[test]
    fn one_step_examples() {
        let c4 = Arc::new(cycle(4));
        let id = DigitalMap::identity(&c4);
        let rot = DigitalMap::from_assignment(&c4, &c4, vec![1, 2, 3, 0]).unwrap();
        assert!(one_step_homotopic(&id, &id).unwrap());
        assert!(one_step_homotopic(&id, &rot).unwrap());
        let a = DigitalMap::constant(&c4, &c4, 0).unwrap();
        let b = DigitalMap::constant(&c4, &c4, 2).unwrap();
        assert!(!one_step_homotopic(&a, &b).unwrap());
        let other = Arc::new(cycle(5));
        assert!(one_step_homotopic(&id, &DigitalMap::identity(&other)).is_err());
    }

    #[test]
    fn figure1_identity_class_is_trivial() {
        let x = arc(Builtin::Figure1);
        let id = DigitalMap::identity(&x);
        let class = homotopy_class(&id, EnumerationBudget::unlimited());
        assert!(class.is_complete());
        assert_eq!(class.members(), vec![id.clone()]);
        assert!(is_rigid_image(&x));
        let c = DigitalMap::constant(&x, &x, 0).unwrap();
        assert!(are_homotopic(&id, &c, EnumerationBudget::unlimited()).unwrap().is_no());
        assert!(is_contractible(&x, EnumerationBudget::unlimited()).is_no());
    }

    #[test]
    fn interval_maps_form_one_class() {
        let x = Arc::new(interval(0, 1));
        let f = DigitalMap::identity(&x);
        let class = homotopy_class(&f, EnumerationBudget::unlimited());
        assert!(class.is_complete());
        assert_eq!(class.len(), 4);
    }

    #[test]
    fn c4_is_contractible() {
        let c4 = Arc::new(cycle(4));
        let id = DigitalMap::identity(&c4);
        let class = homotopy_class(&id, EnumerationBudget::unlimited());
        for v in 0..4 {
            assert!(class.contains(&DigitalMap::constant(&c4, &c4, v).unwrap()));
        }
        let c0 = DigitalMap::constant(&c4, &c4, 0).unwrap();
        match are_homotopic(&id, &c0, EnumerationBudget::unlimited()).unwrap() {
            Decision::Yes(w) => {
                assert!(w.validates(&id, &c0));
                // id -> fold -> constant
                assert_eq!(w.len(), 3);
            }
            other => panic!("expected a chain, got {other:?}"),
        }
        assert!(!is_rigid_image(&c4));
        match is_contractible(&c4, EnumerationBudget::unlimited()) {
            Decision::Yes(w) => assert!(w.last().is_constant() && w.validates(&id, w.last())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_homotopy_has_chain_of_one() {
        let x = arc(Builtin::Tee4);
        let f = DigitalMap::identity(&x);
        match are_homotopic(&f, &f, EnumerationBudget::unlimited()).unwrap() {
            Decision::Yes(w) => assert_eq!(w.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cube_is_contractible() {
        let x = arc(Builtin::Cube);
        match is_contractible(&x, EnumerationBudget::unlimited()) {
            Decision::Yes(w) => {
                assert!(w.last().is_constant());
                assert!(w.validates(&DigitalMap::identity(&x), w.last()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singletons_and_constants() {
        let s = arc(Builtin::Singleton);
        assert!(is_rigid_image(&s));
        let d = Arc::new(discrete(3));
        let c = DigitalMap::constant(&d, &d, 1).unwrap();
        assert!(is_nullhomotopic(&c, EnumerationBudget::unlimited()).is_yes());
        // identity on an edgeless image cannot move
        assert!(is_rigid_image(&d));
        assert!(is_contractible(&d, EnumerationBudget::unlimited()).is_no());
    }

    #[test]
    fn truncated_search_is_unknown() {
        let c6 = Arc::new(cycle(6));
        let id = DigitalMap::identity(&c6);
        let c = DigitalMap::constant(&c6, &c6, 3).unwrap();
        let tiny = EnumerationBudget::unlimited().with_max_results(3);
        assert!(are_homotopic(&id, &c, tiny).unwrap().is_unknown());
        let class = homotopy_class(&id, tiny);
        assert!(!class.is_complete());
        assert_eq!(class.len(), 3);
    }
}
