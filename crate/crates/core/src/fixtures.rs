//! Builders for the named images: digital intervals, cycles, edgeless
//! images, the unit cube, and the small figure images.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::{AdjacencySpec, DigitalImage, Point};

/// A named image that can be built without any input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `[a, b]_Z` under 2-adjacency.
    Interval { a: i64, b: i64 },
    /// `n` points, `x_i` adjacent to `x_{i-1}` and `x_{i+1}` (mod `n`).
    Cycle(usize),
    /// `([0,6] x {0,2}) u {(0,1),(2,1),(4,1),(6,1)}` under 4-adjacency.
    Figure1,
    /// `{0,1}^3` under 6-adjacency.
    Cube,
    /// The cube with `(1,1,1)` removed.
    CubeMinusVertex,
    /// The 4-cycle `x_0 x_1 x_2 x_3`, indexed in label order.
    Square4,
    /// The 4-point tree with centre `y_1` adjacent to `y_0, y_2, y_3`.
    Tee4,
    /// `m` pairwise non-adjacent points.
    Discrete(usize),
    Singleton,
}

impl Builtin {
    pub fn build(self) -> Result<DigitalImage> {
        build(self)
    }
}

/// Builds one of the named images.
pub fn build(kind: Builtin) -> Result<DigitalImage> {
    let name = kind.to_string();
    match kind {
        Builtin::Interval { a, b } => {
            if a >= b {
                return Err(Error::invalid(format!(
                    "interval needs a < b, got [{a},{b}]"
                )));
            }
            DigitalImage::new(
                1,
                (a..=b).map(|v| Point::new(vec![v])).collect(),
                AdjacencySpec::Ct(1),
                Some(name),
            )
        }
        Builtin::Cycle(n) => {
            if n < 1 {
                return Err(Error::invalid("cycle needs at least one point"));
            }
            let edges = match n {
                1 => vec![],
                2 => vec![(0, 1)],
                _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            };
            DigitalImage::new(1, line_points(n), AdjacencySpec::Explicit(edges), Some(name))
        }
        Builtin::Figure1 => {
            let mut pts: Vec<Point> = (0..=6)
                .flat_map(|x| [0, 2].map(|y| Point::new(vec![x, y])))
                .collect();
            pts.extend([0, 2, 4, 6].map(|x| Point::new(vec![x, 1])));
            DigitalImage::new(2, pts, AdjacencySpec::Ct(1), Some(name))
        }
        Builtin::Cube => DigitalImage::new(3, cube_points(), AdjacencySpec::Ct(1), Some(name)),
        Builtin::CubeMinusVertex => {
            let pts = cube_points()
                .into_iter()
                .filter(|p| p.coords() != [1, 1, 1])
                .collect();
            DigitalImage::new(3, pts, AdjacencySpec::Ct(1), Some(name))
        }
        Builtin::Square4 => DigitalImage::new(
            1,
            line_points(4),
            AdjacencySpec::Explicit(vec![(0, 1), (1, 2), (2, 3), (0, 3)]),
            Some(name),
        ),
        Builtin::Tee4 => DigitalImage::new(
            1,
            line_points(4),
            AdjacencySpec::Explicit(vec![(0, 1), (1, 2), (1, 3)]),
            Some(name),
        ),
        Builtin::Discrete(m) => {
            if m < 1 {
                return Err(Error::invalid("discrete image needs at least one point"));
            }
            // spacing 2 keeps the points non-adjacent under c_1
            let pts = (0..m as i64).map(|i| Point::new(vec![2 * i])).collect();
            DigitalImage::new(1, pts, AdjacencySpec::Ct(1), Some(name))
        }
        Builtin::Singleton => {
            DigitalImage::new(1, vec![Point::new(vec![0])], AdjacencySpec::Ct(1), Some(name))
        }
    }
}

fn line_points(n: usize) -> Vec<Point> {
    (0..n as i64).map(|i| Point::new(vec![i])).collect()
}

fn cube_points() -> Vec<Point> {
    let mut pts = Vec::with_capacity(8);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                pts.push(Point::new(vec![a, b, c]));
            }
        }
    }
    pts
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Interval { a, b } => write!(f, "interval:{a}:{b}"),
            Builtin::Cycle(n) => write!(f, "cycle:{n}"),
            Builtin::Figure1 => write!(f, "figure1"),
            Builtin::Cube => write!(f, "cube"),
            Builtin::CubeMinusVertex => write!(f, "cube_minus_vertex"),
            Builtin::Square4 => write!(f, "square4"),
            Builtin::Tee4 => write!(f, "tee4"),
            Builtin::Discrete(m) => write!(f, "discrete:{m}"),
            Builtin::Singleton => write!(f, "singleton"),
        }
    }
}

/// Parses names such as `cube`, `cycle:5`, `interval:0:4`, `discrete:3`,
/// with or without a leading `builtin:`.
impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| -> Result<i64> {
            t.parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad integer '{t}' in builtin name '{s}'")))
        };
        let count = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad count '{t}' in builtin name '{s}'")))
        };
        match parts.as_slice() {
            ["figure1"] => Ok(Builtin::Figure1),
            ["cube"] => Ok(Builtin::Cube),
            ["cube_minus_vertex"] => Ok(Builtin::CubeMinusVertex),
            ["square4"] => Ok(Builtin::Square4),
            ["tee4"] => Ok(Builtin::Tee4),
            ["singleton"] => Ok(Builtin::Singleton),
            ["cycle", n] => Ok(Builtin::Cycle(count(n)?)),
            ["discrete", m] => Ok(Builtin::Discrete(count(m)?)),
            ["interval", a, b] => Ok(Builtin::Interval {
                a: int(a)?,
                b: int(b)?,
            }),
            _ => Err(Error::invalid(format!("unknown builtin image '{s}'"))),
        }
    }
}

/// Shorthands used all over the tests and examples.
pub fn cycle(n: usize) -> DigitalImage {
    build(Builtin::Cycle(n)).expect("cycle size must be positive")
}

pub fn interval(a: i64, b: i64) -> DigitalImage {
    build(Builtin::Interval { a, b }).expect("interval needs a < b")
}

pub fn discrete(m: usize) -> DigitalImage {
    build(Builtin::Discrete(m)).expect("discrete size must be positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_sizes() {
        let c4 = cycle(4);
        assert_eq!((c4.len(), c4.edge_count()), (4, 4));
        assert_eq!(c4.neighbors(0, false).unwrap(), vec![1, 3]);
        assert_eq!((cycle(1).len(), cycle(1).edge_count()), (1, 0));
        assert_eq!((cycle(2).len(), cycle(2).edge_count()), (2, 1));
        assert_eq!(cycle(3).edge_count(), 3);
        assert!(build(Builtin::Cycle(0)).is_err());
    }

    #[test]
    fn figure1_shape() {
        let x = build(Builtin::Figure1).unwrap();
        assert_eq!(x.len(), 18);
        // two rows of 6 edges plus four verticals of 2 edges
        assert_eq!(x.edge_count(), 20);
        assert!(x.is_connected());
    }

    #[test]
    fn cube_shapes() {
        let cube = build(Builtin::Cube).unwrap();
        assert_eq!((cube.len(), cube.edge_count()), (8, 12));
        assert!((0..8).all(|x| cube.degree(x) == 3));
        let y = build(Builtin::CubeMinusVertex).unwrap();
        assert_eq!((y.len(), y.edge_count()), (7, 9));
    }

    #[test]
    fn figure_two_images() {
        let sq = build(Builtin::Square4).unwrap();
        assert_eq!(sq.edge_count(), 4);
        let tee = build(Builtin::Tee4).unwrap();
        assert_eq!(tee.neighbors(1, false).unwrap(), vec![0, 2, 3]);
        assert_eq!(tee.degree_sequence(), vec![1, 1, 1, 3]);
    }

    #[test]
    fn intervals_and_discrete() {
        let i = interval(0, 5);
        assert_eq!(i.components(), vec![(0..6).collect::<Vec<_>>()]);
        assert!(build(Builtin::Interval { a: 2, b: 2 }).is_err());
        assert!(discrete(3).is_totally_disconnected());
        assert!(build(Builtin::Discrete(0)).is_err());
        assert_eq!(build(Builtin::Singleton).unwrap().len(), 1);
    }

    #[test]
    fn names_round_trip() {
        for name in [
            "figure1",
            "cube",
            "cube_minus_vertex",
            "square4",
            "tee4",
            "singleton",
            "cycle:7",
            "discrete:3",
            "interval:-2:4",
        ] {
            let b: Builtin = name.parse().unwrap();
            assert_eq!(b.to_string(), name);
            let prefixed: Builtin = format!("builtin:{name}").parse().unwrap();
            assert_eq!(prefixed, b);
        }
        assert!("torus".parse::<Builtin>().is_err());
        assert!("cycle:x".parse::<Builtin>().is_err());
    }
}
