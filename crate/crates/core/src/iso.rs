//! Isomorphisms between digital images and an exhaustive search for them.

use crate::error::{Error, Result};
use crate::image::DigitalImage;

/// An adjacency-preserving bijection whose inverse also preserves adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Isomorphism {
    /// Validates `forward` as an isomorphism `domain -> codomain`.
    pub fn new(domain: &DigitalImage, codomain: &DigitalImage, forward: Vec<usize>) -> Result<Self> {
        let n = domain.len();
        if forward.len() != n || codomain.len() != n {
            return Err(Error::invalid("isomorphism needs images of equal size"));
        }
        let mut inverse = vec![usize::MAX; n];
        for (x, &y) in forward.iter().enumerate() {
            if y >= n || inverse[y] != usize::MAX {
                return Err(Error::invalid("assignment is not a bijection"));
            }
            inverse[y] = x;
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if domain.is_adjacent(a, b) != codomain.is_adjacent(forward[a], forward[b]) {
                    return Err(Error::invalid(format!(
                        "adjacency of ({a},{b}) is not preserved"
                    )));
                }
            }
        }
        Ok(Isomorphism { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Isomorphism {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    pub fn apply_inverse(&self, y: usize) -> usize {
        self.inverse[y]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

/// Sorted degrees of the neighbors, used as a per-vertex invariant.
fn neighbor_signature(img: &DigitalImage, x: usize) -> (usize, Vec<usize>) {
    let mut degs: Vec<usize> = img.adjacent_points(x).iter().map(|&y| img.degree(y)).collect();
    degs.sort_unstable();
    (img.degree(x), degs)
}

/// Finds some isomorphism `x -> y` by backtracking, or `None` if there is none.
///
/// Domain points are placed in breadth-first order so that each point after the
/// first of its component is constrained to the neighborhood of an already
/// mapped neighbor. Candidates must match degree and neighbor-degree multiset.
pub fn find_isomorphism(x: &DigitalImage, y: &DigitalImage) -> Option<Isomorphism> {
    let n = x.len();
    if n != y.len() || x.edge_count() != y.edge_count() || x.degree_sequence() != y.degree_sequence()
    {
        return None;
    }
    let sig_x: Vec<_> = (0..n).map(|v| neighbor_signature(x, v)).collect();
    let sig_y: Vec<_> = (0..n).map(|v| neighbor_signature(y, v)).collect();
    {
        let mut a = sig_x.clone();
        let mut b = sig_y.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }

    let order = x.bfs_order();
    // earlier-placed neighbor each point can anchor on
    let mut position = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let anchor: Vec<Option<usize>> = order
        .iter()
        .map(|&v| {
            x.adjacent_points(v)
                .iter()
                .copied()
                .filter(|&u| position[u] < position[v])
                .min_by_key(|&u| position[u])
        })
        .collect();

    let mut forward = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        x: &DigitalImage,
        y: &DigitalImage,
        order: &[usize],
        depth: usize,
        forward: &[usize],
        cand: usize,
    ) -> bool {
        let v = order[depth];
        order[..depth]
            .iter()
            .all(|&u| x.is_adjacent(u, v) == y.is_adjacent(forward[u], cand))
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        x: &DigitalImage,
        y: &DigitalImage,
        order: &[usize],
        anchor: &[Option<usize>],
        sig_x: &[(usize, Vec<usize>)],
        sig_y: &[(usize, Vec<usize>)],
        depth: usize,
        forward: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let candidates: Vec<usize> = match anchor[depth] {
            Some(u) => y.adjacent_points(forward[u]).to_vec(),
            None => (0..y.len()).collect(),
        };
        for c in candidates {
            if used[c] || sig_x[v] != sig_y[c] || !consistent(x, y, order, depth, forward, c) {
                continue;
            }
            forward[v] = c;
            used[c] = true;
            if search(x, y, order, anchor, sig_x, sig_y, depth + 1, forward, used) {
                return true;
            }
            used[c] = false;
            forward[v] = usize::MAX;
        }
        false
    }

    if search(x, y, &order, &anchor, &sig_x, &sig_y, 0, &mut forward, &mut used) {
        let inverse = {
            let mut inv = vec![0; n];
            for (a, &b) in forward.iter().enumerate() {
                inv[b] = a;
            }
            inv
        };
        Some(Isomorphism { forward, inverse })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle, Builtin};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn cycle_and_square_are_isomorphic() {
        let c4 = cycle(4);
        let sq = build(Builtin::Square4).unwrap();
        let iso = find_isomorphism(&c4, &sq).unwrap();
        assert!(Isomorphism::new(&c4, &sq, iso.forward().to_vec()).is_ok());
    }

    #[test]
    fn cycle_and_tee_are_not() {
        let c4 = cycle(4);
        let tee = build(Builtin::Tee4).unwrap();
        // brute force over all 24 bijections
        let any = permutations(4)
            .into_iter()
            .any(|p| Isomorphism::new(&c4, &tee, p).is_ok());
        assert!(!any);
        assert!(find_isomorphism(&c4, &tee).is_none());
    }

    #[test]
    fn self_isomorphism_exists() {
        for b in [Builtin::Figure1, Builtin::Cube, Builtin::Tee4, Builtin::Discrete(3)] {
            let x = build(b).unwrap();
            assert!(find_isomorphism(&x, &x).is_some());
            assert!(Isomorphism::new(&x, &x, (0..x.len()).collect()).is_ok());
        }
    }

    #[test]
    fn cube_minus_vertex_is_not_cube() {
        let a = build(Builtin::Cube).unwrap();
        let b = build(Builtin::CubeMinusVertex).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn rejects_non_bijection() {
        let c4 = cycle(4);
        assert!(Isomorphism::new(&c4, &c4, vec![0, 0, 1, 2]).is_err());
        assert!(Isomorphism::new(&c4, &c4, vec![0, 2, 1, 3]).is_err());
    }
}
