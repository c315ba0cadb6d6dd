//! Seeded random images and maps for the universally quantified checks.
//!
//! Half of the images are labeled graphs on `k` points with each edge present
//! with probability 1/2; the other half are random subsets of `[0,2]^n`,
//! `n <= 3`, under a random `c_t` adjacency.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{continuous_assignments, EnumerationBudget, Meter};
use crate::image::{AdjacencySpec, DigitalImage, Point};
use crate::iso::Isomorphism;
use crate::maps::DigitalMap;

/// Maps are drawn from at most this many enumerated candidates.
const MAP_POOL_CAP: u64 = 200_000;

/// The generator for instance `index` of a run seeded with `seed`. Streams are
/// independent, so instance `index` does not depend on how many came before.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A labeled graph on `1..=max_points` points, embedded as `0, 1, ..` on the
/// line with explicit edges.
pub fn random_graph_image<R: Rng>(rng: &mut R, max_points: usize) -> DigitalImage {
    let k = rng.gen_range(1..=max_points);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    let points = (0..k as i64).map(|i| Point::new(vec![i])).collect();
    DigitalImage::new(1, points, AdjacencySpec::Explicit(edges), None).expect("valid graph")
}

/// A random subset of `[0,2]^n` with `c_t` adjacency.
pub fn random_ct_image<R: Rng>(rng: &mut R, max_points: usize) -> DigitalImage {
    let n = rng.gen_range(1..=3usize);
    let t = rng.gen_range(1..=n);
    let mut grid: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        grid = grid
            .into_iter()
            .flat_map(|p| {
                (0..3).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let k = rng.gen_range(1..=max_points.min(grid.len()));
    let points = grid
        .choose_multiple(rng, k)
        .cloned()
        .map(Point::new)
        .collect();
    DigitalImage::new(n, points, AdjacencySpec::Ct(t), None).expect("valid grid subset")
}

pub fn random_image<R: Rng>(rng: &mut R, max_points: usize) -> DigitalImage {
    if rng.gen_bool(0.5) {
        random_graph_image(rng, max_points)
    } else {
        random_ct_image(rng, max_points)
    }
}

/// All continuous maps `x -> y` (capped), for drawing uniformly.
pub fn map_pool(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
    let mut meter = Meter::new(EnumerationBudget::unlimited().with_max_results(MAP_POOL_CAP));
    continuous_assignments(x, y, &mut meter).0
}

/// `count` maps drawn uniformly, with replacement, from `pool`.
pub fn pick_maps<R: Rng>(
    rng: &mut R,
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    pool: &[Vec<usize>],
    count: usize,
) -> Vec<DigitalMap> {
    (0..count)
        .map(|_| {
            let a = pool.choose(rng).expect("constant maps always exist").clone();
            DigitalMap::from_assignment(x, y, a).expect("pool maps are continuous")
        })
        .collect()
}

/// A relabeled copy of `x` on the points `0, 1, ..` of the line, with the
/// isomorphism from `x` onto it.
pub fn random_relabeling<R: Rng>(rng: &mut R, x: &DigitalImage) -> (DigitalImage, Isomorphism) {
    let mut forward: Vec<usize> = (0..x.len()).collect();
    forward.shuffle(rng);
    let edges = x
        .edges()
        .into_iter()
        .map(|(a, b)| (forward[a], forward[b]))
        .collect();
    let points = (0..x.len() as i64).map(|i| Point::new(vec![i])).collect();
    let y = DigitalImage::new(1, points, AdjacencySpec::Explicit(edges), None)
        .expect("relabeled copy is valid");
    let phi = Isomorphism::new(x, &y, forward).expect("relabeling is an isomorphism");
    (y, phi)
}
