//! Digitally continuous maps and the point sets they determine: coincidence
//! sets, fixed point sets, common fixed point sets.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::iso::Isomorphism;

/// A sorted set of domain point indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(Vec<usize>);

impl PointSet {
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        PointSet(members)
    }

    pub fn all(n: usize) -> Self {
        PointSet((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

pub(crate) fn same_image(a: &Arc<DigitalImage>, b: &Arc<DigitalImage>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Returns the first domain edge `(x, y)` whose images are neither equal nor
/// adjacent, if any.
pub fn first_violation(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    assignment: &[usize],
) -> Result<Option<(usize, usize)>> {
    if assignment.len() != domain.len() {
        return Err(Error::invalid(format!(
            "assignment has {} entries but the domain has {} points",
            assignment.len(),
            domain.len()
        )));
    }
    if let Some((x, &v)) = assignment.iter().enumerate().find(|(_, &v)| v >= codomain.len()) {
        return Err(Error::invalid(format!(
            "point {x} is sent to {v}, outside the codomain 0..{}",
            codomain.len()
        )));
    }
    Ok(domain
        .edges()
        .into_iter()
        .find(|&(x, y)| !codomain.is_adjacent_or_equal(assignment[x], assignment[y])))
}

/// Digital continuity: adjacent points go to equal or adjacent points.
pub fn is_continuous(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    assignment: &[usize],
) -> Result<bool> {
    first_violation(domain, codomain, assignment).map(|v| v.is_none())
}

/// A validated continuous map between two digital images.
///
/// Equality and hashing are structural: same images, same assignment.
#[derive(Clone)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    assignment: Vec<usize>,
}

impl DigitalMap {
    pub fn identity(x: &Arc<DigitalImage>) -> Self {
        DigitalMap {
            domain: x.clone(),
            codomain: x.clone(),
            assignment: (0..x.len()).collect(),
        }
    }

    pub fn constant(x: &Arc<DigitalImage>, y: &Arc<DigitalImage>, value: usize) -> Result<Self> {
        if value >= y.len() {
            return Err(Error::invalid(format!(
                "constant value {value} outside the codomain 0..{}",
                y.len()
            )));
        }
        Ok(DigitalMap {
            domain: x.clone(),
            codomain: y.clone(),
            assignment: vec![value; x.len()],
        })
    }

    /// Validates continuity; on failure the error names one offending edge.
    pub fn from_assignment(
        x: &Arc<DigitalImage>,
        y: &Arc<DigitalImage>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if let Some((a, b)) = first_violation(x, y, &assignment)? {
            return Err(Error::Discontinuous {
                x: a,
                y: b,
                fx: assignment[a],
                fy: assignment[b],
            });
        }
        Ok(DigitalMap {
            domain: x.clone(),
            codomain: y.clone(),
            assignment,
        })
    }

    /// For callers that have already established continuity.
    pub(crate) fn from_trusted(
        x: &Arc<DigitalImage>,
        y: &Arc<DigitalImage>,
        assignment: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(is_continuous(x, y, &assignment), Ok(true));
        DigitalMap {
            domain: x.clone(),
            codomain: y.clone(),
            assignment,
        }
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn is_self_map(&self) -> bool {
        same_image(&self.domain, &self.codomain)
    }

    pub fn is_identity(&self) -> bool {
        self.is_self_map() && self.assignment.iter().enumerate().all(|(x, &v)| x == v)
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    pub fn same_images(&self, other: &DigitalMap) -> bool {
        same_image(&self.domain, &other.domain) && same_image(&self.codomain, &other.codomain)
    }

    /// `g ∘ f` where `self` is `g`.
    pub fn compose(&self, f: &DigitalMap) -> Result<DigitalMap> {
        compose(self, f)
    }
}

/// `(g ∘ f)(x) = g(f(x))`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if !same_image(&f.codomain, &g.domain) {
        return Err(Error::invalid("codomain of f is not the domain of g"));
    }
    let assignment = f.assignment.iter().map(|&v| g.assignment[v]).collect();
    Ok(DigitalMap::from_trusted(&f.domain, &g.codomain, assignment))
}

/// `Φ ∘ f ∘ Φ⁻¹` on `target`, for a self-map `f` of `Φ`'s domain.
pub fn conjugate(f: &DigitalMap, phi: &Isomorphism, target: &Arc<DigitalImage>) -> Result<DigitalMap> {
    if !f.is_self_map() {
        return Err(Error::invalid("conjugation needs a self-map"));
    }
    if phi.len() != f.domain.len() || target.len() != phi.len() {
        return Err(Error::invalid("isomorphism does not match the map's image"));
    }
    let assignment = (0..target.len())
        .map(|y| phi.apply(f.assignment[phi.apply_inverse(y)]))
        .collect();
    DigitalMap::from_assignment(target, target, assignment)
}

fn check_family(maps: &[&DigitalMap]) -> Result<()> {
    let first = maps
        .first()
        .ok_or_else(|| Error::invalid("need at least one map"))?;
    if maps.iter().any(|m| !m.same_images(first)) {
        return Err(Error::invalid("maps do not share domain and codomain"));
    }
    Ok(())
}

/// `C(f_1, ..., f_i)`: points where every map agrees. A single map agrees
/// with itself everywhere.
pub fn coincidence_set(maps: &[&DigitalMap]) -> Result<PointSet> {
    check_family(maps)?;
    let first = maps[0];
    let members = (0..first.domain.len())
        .filter(|&x| {
            let v = first.assignment[x];
            maps.iter().all(|m| m.assignment[x] == v)
        })
        .collect();
    Ok(PointSet(members))
}

/// `Fix(f)`.
pub fn fixed_point_set(f: &DigitalMap) -> Result<PointSet> {
    if !f.is_self_map() {
        return Err(Error::invalid("fixed points need a self-map"));
    }
    Ok(PointSet(
        (0..f.domain.len()).filter(|&x| f.assignment[x] == x).collect(),
    ))
}

/// `CF(f_1, ..., f_i)`: points fixed by every map.
pub fn common_fixed_set(maps: &[&DigitalMap]) -> Result<PointSet> {
    check_family(maps)?;
    if !maps[0].is_self_map() {
        return Err(Error::invalid("common fixed points need self-maps"));
    }
    let n = maps[0].domain.len();
    Ok(PointSet(
        (0..n)
            .filter(|&x| maps.iter().all(|m| m.assignment[x] == x))
            .collect(),
    ))
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment && self.same_images(other)
    }
}

impl Eq for DigitalMap {}

impl Hash for DigitalMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.assignment.hash(state);
    }
}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DigitalMap({} -> {}, {:?})",
            self.domain.label(),
            self.codomain.label(),
            self.assignment
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle, interval, Builtin};

    fn arc(b: Builtin) -> Arc<DigitalImage> {
        Arc::new(build(b).unwrap())
    }

    fn rotation(c: &Arc<DigitalImage>, k: usize) -> DigitalMap {
        let n = c.len();
        DigitalMap::from_assignment(c, c, (0..n).map(|i| (i + k) % n).collect()).unwrap()
    }

    #[test]
    fn continuity_examples() {
        let i = interval(0, 2);
        assert!(is_continuous(&i, &i, &[0, 1, 2]).unwrap());
        assert!(is_continuous(&i, &i, &[1, 1, 1]).unwrap());
        assert!(!is_continuous(&i, &i, &[0, 2, 0]).unwrap());
        assert!(is_continuous(&i, &i, &[0, 1]).is_err());
        assert!(is_continuous(&i, &i, &[0, 1, 3]).is_err());
        let d = build(Builtin::Discrete(3)).unwrap();
        assert!(is_continuous(&d, &i, &[0, 2, 0]).unwrap());
    }

    #[test]
    fn construction_reports_witness_edge() {
        let i = Arc::new(interval(0, 2));
        match DigitalMap::from_assignment(&i, &i, vec![0, 2, 0]) {
            Err(Error::Discontinuous { x, y, fx, fy }) => {
                assert_eq!((x, y, fx, fy), (0, 1, 0, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn figure_two_maps() {
        let x = arc(Builtin::Square4);
        let y = arc(Builtin::Tee4);
        let f = DigitalMap::from_assignment(&x, &y, vec![1, 0, 1, 2]).unwrap();
        let g = DigitalMap::from_assignment(&x, &y, vec![0, 1, 3, 1]).unwrap();
        let c = DigitalMap::constant(&x, &y, 3).unwrap();
        assert!(coincidence_set(&[&f, &g, &c]).unwrap().is_empty());
        assert_eq!(coincidence_set(&[&f, &f]).unwrap(), PointSet::all(4));
    }

    #[test]
    fn coincidence_of_constants() {
        let x = Arc::new(cycle(5));
        let a = DigitalMap::constant(&x, &x, 0).unwrap();
        let b = DigitalMap::constant(&x, &x, 2).unwrap();
        assert!(coincidence_set(&[&a, &b]).unwrap().is_empty());
        assert!(coincidence_set(&[&a, &a, &b]).unwrap().is_empty());
        assert_eq!(coincidence_set(&[&a]).unwrap(), PointSet::all(5));
        assert!(DigitalMap::constant(&x, &x, 5).is_err());
    }

    #[test]
    fn mixed_families_are_rejected() {
        let x = Arc::new(cycle(4));
        let y = Arc::new(cycle(5));
        let a = DigitalMap::identity(&x);
        let b = DigitalMap::identity(&y);
        assert!(coincidence_set(&[&a, &b]).is_err());
        assert!(coincidence_set(&[]).is_err());
        let z = DigitalMap::constant(&x, &y, 0).unwrap();
        assert!(fixed_point_set(&z).is_err());
        assert!(common_fixed_set(&[&z]).is_err());
    }

    #[test]
    fn composition() {
        let c4 = Arc::new(cycle(4));
        let r = rotation(&c4, 1);
        assert_eq!(compose(&r, &r).unwrap(), rotation(&c4, 2));
        let id = DigitalMap::identity(&c4);
        assert_eq!(compose(&id, &r).unwrap(), r);
        let c = DigitalMap::constant(&c4, &c4, 3).unwrap();
        assert_eq!(compose(&c, &r).unwrap(), c);
        let other = Arc::new(cycle(5));
        assert!(compose(&DigitalMap::identity(&other), &r).is_err());
    }

    #[test]
    fn fixed_points() {
        let c4 = Arc::new(cycle(4));
        assert_eq!(fixed_point_set(&DigitalMap::identity(&c4)).unwrap(), PointSet::all(4));
        assert!(fixed_point_set(&rotation(&c4, 1)).unwrap().is_empty());
        let c = DigitalMap::constant(&c4, &c4, 2).unwrap();
        assert_eq!(fixed_point_set(&c).unwrap().members(), &[2]);
    }

    #[test]
    fn common_fixed_points() {
        let c4 = Arc::new(cycle(4));
        let id = DigitalMap::identity(&c4);
        assert_eq!(common_fixed_set(&[&id]).unwrap(), PointSet::all(4));
        let a = DigitalMap::constant(&c4, &c4, 0).unwrap();
        let b = DigitalMap::constant(&c4, &c4, 1).unwrap();
        assert!(common_fixed_set(&[&a, &b]).unwrap().is_empty());
        // reflection through x0 and x2
        let refl = DigitalMap::from_assignment(&c4, &c4, vec![0, 3, 2, 1]).unwrap();
        assert_eq!(common_fixed_set(&[&refl]).unwrap().members(), &[0, 2]);
        assert_eq!(
            common_fixed_set(&[&refl, &a]).unwrap(),
            coincidence_set(&[&refl, &a, &id]).unwrap()
        );
    }

    #[test]
    fn conjugation() {
        let c4 = Arc::new(cycle(4));
        let sq = arc(Builtin::Square4);
        let phi = crate::iso::find_isomorphism(&c4, &sq).unwrap();
        let id = DigitalMap::identity(&c4);
        assert_eq!(conjugate(&id, &phi, &sq).unwrap(), DigitalMap::identity(&sq));

        // rotation of C4 viewed as an automorphism
        let rot = Isomorphism::new(&c4, &c4, vec![1, 2, 3, 0]).unwrap();
        let refl = DigitalMap::from_assignment(&c4, &c4, vec![0, 3, 2, 1]).unwrap();
        let g = conjugate(&refl, &rot, &c4).unwrap();
        assert_eq!(g.assignment(), &[2, 1, 0, 3]);
        assert_eq!(
            fixed_point_set(&g).unwrap().len(),
            fixed_point_set(&refl).unwrap().len()
        );
    }
}
