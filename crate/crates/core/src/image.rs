//! Finite digital images: point sets in `Z^n` with a symmetric, antireflexive
//! adjacency relation.
//!
//! Points are kept in lexicographic order of their coordinates and every other
//! part of the crate refers to them by index into that order. Adjacency comes
//! either from the `c_t` rule or from an explicit edge list, which lets
//! figure-derived images be encoded exactly whatever their embedding.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A lattice point of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// How adjacency is derived for an image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjacencySpec {
    /// The `c_t` rule: between 1 and `t` coordinates differ by exactly one,
    /// all others agree.
    Ct(usize),
    /// Unordered index pairs, each stored as `(lo, hi)` with `lo < hi`.
    Explicit(Vec<(usize, usize)>),
}

/// `c_t` adjacency of two points.
pub fn ct_adjacent(p: &Point, q: &Point, t: usize) -> Result<bool> {
    if p.dimension() != q.dimension() {
        return Err(Error::invalid(format!(
            "points {p} and {q} have different dimensions"
        )));
    }
    if t == 0 || t > p.dimension() {
        return Err(Error::invalid(format!(
            "c_t adjacency needs 1 <= t <= {}, got t = {t}",
            p.dimension()
        )));
    }
    Ok(ct_rule(p.coords(), q.coords(), t))
}

fn ct_rule(p: &[i64], q: &[i64], t: usize) -> bool {
    let mut differing = 0;
    for (a, b) in p.iter().zip(q) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    (1..=t).contains(&differing)
}

/// A finite digital image.
#[derive(Debug, Clone)]
pub struct DigitalImage {
    name: Option<String>,
    dimension: usize,
    points: Vec<Point>,
    adjacency: AdjacencySpec,
    neighbors: Vec<Vec<usize>>,
    adjacent: Vec<bool>,
}

impl DigitalImage {
    /// Builds an image, re-sorting the points into canonical order.
    pub fn new(
        dimension: usize,
        points: Vec<Point>,
        adjacency: AdjacencySpec,
        name: Option<String>,
    ) -> Result<Self> {
        Self::with_permutation(dimension, points, adjacency, name).map(|(image, _)| image)
    }

    /// Like [`DigitalImage::new`], also returning `perm` with
    /// `perm[input_index] = canonical_index`.
    pub fn with_permutation(
        dimension: usize,
        points: Vec<Point>,
        adjacency: AdjacencySpec,
        name: Option<String>,
    ) -> Result<(Self, Vec<usize>)> {
        if dimension == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if points.is_empty() {
            return Err(Error::invalid("digital images must be nonempty"));
        }
        if let Some(p) = points.iter().find(|p| p.dimension() != dimension) {
            return Err(Error::invalid(format!(
                "point {p} does not have dimension {dimension}"
            )));
        }

        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        if let Some(w) = order.windows(2).find(|w| points[w[0]] == points[w[1]]) {
            return Err(Error::invalid(format!(
                "duplicate point {}",
                points[w[0]]
            )));
        }
        let mut perm = vec![0; points.len()];
        for (canonical, &input) in order.iter().enumerate() {
            perm[input] = canonical;
        }
        let mut slots: Vec<Option<Point>> = points.into_iter().map(Some).collect();
        let points: Vec<Point> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        let n = points.len();

        let adjacency = match adjacency {
            AdjacencySpec::Ct(t) => {
                if t == 0 || t > dimension {
                    return Err(Error::invalid(format!(
                        "c_t adjacency needs 1 <= t <= {dimension}, got t = {t}"
                    )));
                }
                AdjacencySpec::Ct(t)
            }
            AdjacencySpec::Explicit(edges) => {
                let mut set = BTreeSet::new();
                for (a, b) in edges {
                    if a >= n || b >= n {
                        return Err(Error::invalid(format!(
                            "edge ({a},{b}) refers to a point outside 0..{n}"
                        )));
                    }
                    if a == b {
                        return Err(Error::invalid(format!(
                            "edge ({a},{a}) violates antireflexivity"
                        )));
                    }
                    let (a, b) = (perm[a], perm[b]);
                    set.insert((a.min(b), a.max(b)));
                }
                AdjacencySpec::Explicit(set.into_iter().collect())
            }
        };

        let mut adjacent = vec![false; n * n];
        match &adjacency {
            AdjacencySpec::Ct(t) => {
                for a in 0..n {
                    for b in (a + 1)..n {
                        if ct_rule(points[a].coords(), points[b].coords(), *t) {
                            adjacent[a * n + b] = true;
                            adjacent[b * n + a] = true;
                        }
                    }
                }
            }
            AdjacencySpec::Explicit(edges) => {
                for &(a, b) in edges {
                    adjacent[a * n + b] = true;
                    adjacent[b * n + a] = true;
                }
            }
        }
        let neighbors = (0..n)
            .map(|a| (0..n).filter(|&b| adjacent[a * n + b]).collect())
            .collect();

        Ok((
            DigitalImage {
                name,
                dimension,
                points,
                adjacency,
                neighbors,
                adjacent,
            },
            perm,
        ))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &Point {
        &self.points[x]
    }

    pub fn adjacency(&self) -> &AdjacencySpec {
        &self.adjacency
    }

    /// Number of points, `#X`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; empty images cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point with the given coordinates.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    #[inline]
    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.adjacent[x * self.points.len() + y]
    }

    /// Adjacent or equal.
    #[inline]
    pub fn is_adjacent_or_equal(&self, x: usize, y: usize) -> bool {
        x == y || self.is_adjacent(x, y)
    }

    /// Sorted open neighborhood of `x`, without bounds checking.
    pub fn adjacent_points(&self, x: usize) -> &[usize] {
        &self.neighbors[x]
    }

    /// Open (`N(x)`) or closed (`N*(x)`) neighborhood, sorted ascending.
    pub fn neighbors(&self, x: usize, closed: bool) -> Result<Vec<usize>> {
        if x >= self.len() {
            return Err(Error::invalid(format!(
                "point index {x} out of range 0..{}",
                self.len()
            )));
        }
        let mut out = self.neighbors[x].clone();
        if closed {
            let at = out.partition_point(|&y| y < x);
            out.insert(at, x);
        }
        Ok(out)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.neighbors[x].len()
    }

    /// All edges as `(lo, hi)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.neighbors.iter().enumerate() {
            out.extend(ns.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_adjacent_pair(&self) -> bool {
        self.neighbors.iter().any(|ns| !ns.is_empty())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.neighbors[x] {
                    if !seen[y] {
                        seen[y] = true;
                        block.push(y);
                        queue.push_back(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Every component is a single point.
    pub fn is_totally_disconnected(&self) -> bool {
        !self.has_adjacent_pair()
    }

    /// Breadth-first order of each component from its lowest index,
    /// components concatenated in order of their lowest index.
    pub fn bfs_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &y in &self.neighbors[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        order
    }

    /// Single-source shortest path lengths; `None` for unreachable points.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.neighbors[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Label used in reports: the name if present, otherwise a size summary.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("<{} points, {} edges>", self.len(), self.edge_count()),
        }
    }

    /// Same points, with one edge removed. Adjacency becomes explicit.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.len() || b >= self.len() || !self.is_adjacent(a, b) {
            return Err(Error::invalid(format!("({a},{b}) is not an edge")));
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|&e| e != (a.min(b), a.max(b)))
            .collect();
        DigitalImage::new(
            self.dimension,
            self.points.clone(),
            AdjacencySpec::Explicit(edges),
            self.name.as_ref().map(|n| format!("{n}-minus-edge-{a}-{b}")),
        )
    }
}

/// Structural equality: same dimension, same points, same adjacency relation.
/// The name and the way adjacency was specified are ignored.
impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.points == other.points
            && self.adjacent == other.adjacent
    }
}

impl Eq for DigitalImage {}
