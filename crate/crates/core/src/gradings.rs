//! Maslov and Alexander gradings of grid states.
//!
//! State points sit on the integer lattice `(c, sigma[c])`, markers at cell
//! centres `(c + 1/2, row + 1/2)`. All geometry is done in doubled
//! coordinates so every point is integral and no comparison ever ties.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridDiagram, Marker};
use crate::state::GridState;

/// A (Maslov, Alexander) pair. Ordered lexicographically, Maslov first.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Bigrading {
    pub m: i32,
    pub a: i32,
}

impl Bigrading {
    pub const fn new(m: i32, a: i32) -> Self {
        Bigrading { m, a }
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.a)
    }
}

/// A planar point in doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub x2: i64,
    pub y2: i64,
}

impl Point {
    pub fn lattice(x: i64, y: i64) -> Self {
        Point {
            x2: 2 * x,
            y2: 2 * y,
        }
    }

    /// Centre of the cell whose lower-left corner is `(x, y)`.
    pub fn cell_center(x: i64, y: i64) -> Self {
        Point {
            x2: 2 * x + 1,
            y2: 2 * y + 1,
        }
    }
}

/// A number of the form `k / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn to_integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

/// Number of pairs `(p, q)` with `p` strictly south-west of `q`.
pub fn southwest_pairs(a: &[Point], b: &[Point]) -> i64 {
    a.iter()
        .map(|p| b.iter().filter(|q| p.x2 < q.x2 && p.y2 < q.y2).count() as i64)
        .sum()
}

/// Symmetrized south-west count `(I(A,B) + I(B,A)) / 2`.
pub fn j_pair(a: &[Point], b: &[Point]) -> HalfInt {
    HalfInt {
        twice: southwest_pairs(a, b) + southwest_pairs(b, a),
    }
}

pub fn state_points(s: &GridState) -> Vec<Point> {
    s.sigma()
        .iter()
        .enumerate()
        .map(|(c, &r)| Point::lattice(c as i64, r as i64))
        .collect()
}

pub fn marker_points(g: &GridDiagram, marker: Marker) -> Vec<Point> {
    g.markers(marker)
        .iter()
        .enumerate()
        .map(|(c, &r)| Point::cell_center(c as i64, r as i64))
        .collect()
}

/// `M_P(s) = J(s,s) - 2 J(s,P) + J(P,P) + 1` for the marker set `P`.
pub fn maslov(g: &GridDiagram, s: &GridState, marker: Marker) -> i64 {
    let pts = state_points(s);
    let mk = marker_points(g, marker);
    let twice = j_pair(&pts, &pts).twice - 2 * j_pair(&pts, &mk).twice + j_pair(&mk, &mk).twice;
    debug_assert_eq!(twice % 2, 0);
    twice / 2 + 1
}

/// `A(s) = (M_O(s) - M_X(s) - (n - 1)) / 2`; knots only.
pub fn alexander(g: &GridDiagram, s: &GridState) -> Result<i64> {
    let components = g.component_count();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let diff = maslov(g, s, Marker::O) - maslov(g, s, Marker::X) - (g.size() as i64 - 1);
    debug_assert_eq!(diff % 2, 0);
    Ok(diff / 2)
}

pub fn bigrading(g: &GridDiagram, s: &GridState) -> Result<Bigrading> {
    let a = alexander(g, s)?;
    Ok(Bigrading::new(maslov(g, s, Marker::O) as i32, a as i32))
}

/// Precomputed marker data for grading many states of one grid.
#[derive(Debug, Clone)]
pub struct Grader {
    n: usize,
    o: Vec<u8>,
    x: Vec<u8>,
    oo_twice: i64,
    xx_twice: i64,
}

impl Grader {
    /// The grid must be a knot; see [`alexander`].
    pub fn new(g: &GridDiagram) -> Result<Self> {
        let components = g.component_count();
        if components != 1 {
            return Err(Error::NotAKnot { components });
        }
        Ok(Self::any_grid(g))
    }

    /// Like [`Grader::new`] but accepts links, whose Alexander component of
    /// [`Grader::grade`] is then meaningless. The Maslov component is valid.
    pub fn any_grid(g: &GridDiagram) -> Self {
        let op = marker_points(g, Marker::O);
        let xp = marker_points(g, Marker::X);
        Grader {
            n: g.size(),
            o: g.o().iter().map(|&r| r as u8).collect(),
            x: g.x().iter().map(|&r| r as u8).collect(),
            oo_twice: j_pair(&op, &op).twice,
            xx_twice: j_pair(&xp, &xp).twice,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `2 J(s, P)` for a state given as a row slice.
    #[inline]
    fn state_marker_twice(sigma: &[u8], markers: &[u8]) -> i64 {
        let mut count = 0i64;
        for (c, &s) in sigma.iter().enumerate() {
            for (d, &p) in markers.iter().enumerate() {
                // state before marker: c <= d and s <= p; marker before state: d < c and p < s
                if d >= c {
                    count += (s <= p) as i64;
                } else {
                    count += (p < s) as i64;
                }
            }
        }
        count
    }

    #[inline]
    pub fn grade(&self, sigma: &[u8]) -> Bigrading {
        let n = sigma.len();
        let mut ascents = 0i64;
        for c in 0..n {
            for d in c + 1..n {
                ascents += (sigma[c] < sigma[d]) as i64;
            }
        }
        let ss_twice = 2 * ascents;
        let so = Self::state_marker_twice(sigma, &self.o);
        let sx = Self::state_marker_twice(sigma, &self.x);
        let mo = (ss_twice - 2 * so + self.oo_twice) / 2 + 1;
        let mx = (ss_twice - 2 * sx + self.xx_twice) / 2 + 1;
        let a = (mo - mx - (n as i64 - 1)) / 2;
        Bigrading::new(mo as i32, a as i32)
    }
}
