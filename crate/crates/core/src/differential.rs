//! Empty rectangles and the boundary maps of the tilde grid complex.
//!
//! A rectangle from state `s` to state `t` has `s`'s points at its lower-left
//! and upper-right corners and `t`'s at the other two. It runs rightwards
//! (wrapping) from column `left` to column `right` and upwards (wrapping)
//! from row `bottom` to row `top`. It is empty when its open interior holds
//! no point of `s` and no marker of either kind. The boundary of `s` is the
//! mod-2 sum of the targets of its empty rectangles.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::gradings::{Bigrading, Grader};
use crate::grid::GridDiagram;
use crate::state::{factorial, next_permutation, GridState};

/// A rectangle on the grid torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rectangle {
    /// Column of the lower-left corner.
    pub left: u8,
    /// Column of the upper-right corner.
    pub right: u8,
    /// Row of the lower-left corner.
    pub bottom: u8,
    /// Row of the upper-right corner.
    pub top: u8,
}

impl Rectangle {
    /// The rectangle crosses the vertical seam of the fundamental domain.
    pub fn wraps_columns(&self) -> bool {
        self.left > self.right
    }

    /// The rectangle crosses the horizontal seam of the fundamental domain.
    pub fn wraps_rows(&self) -> bool {
        self.bottom > self.top
    }

    pub fn width(&self, n: usize) -> usize {
        (self.right as usize + n - self.left as usize) % n
    }

    pub fn height(&self, n: usize) -> usize {
        (self.top as usize + n - self.bottom as usize) % n
    }
}

/// Marker rows as bytes, for the hot loops.
#[derive(Debug, Clone)]
pub(crate) struct MarkerRows {
    n: usize,
    o: Vec<u8>,
    x: Vec<u8>,
}

impl MarkerRows {
    pub(crate) fn new(g: &GridDiagram) -> Self {
        MarkerRows {
            n: g.size(),
            o: g.o().iter().map(|&r| r as u8).collect(),
            x: g.x().iter().map(|&r| r as u8).collect(),
        }
    }

    /// Calls `f(left, right)` for every empty rectangle out of `sigma`.
    ///
    /// For a fixed lower-left corner the admissible height only shrinks as
    /// the rectangle widens: a rectangle reaching column `right` is empty iff
    /// its height is at most the lowest marker or state point seen so far
    /// above the bottom row.
    #[inline]
    pub(crate) fn for_each_empty(&self, sigma: &[u8], mut f: impl FnMut(usize, usize)) {
        let n = self.n;
        for left in 0..n {
            let base = sigma[left] as usize;
            let offset = |row: u8| (row as usize + n - base) % n;
            // markers in the leftmost column bound the height
            let mut limit = offset(self.o[left]).min(offset(self.x[left]));
            let mut col = left;
            for _ in 1..n {
                col += 1;
                if col == n {
                    col = 0;
                }
                let h = offset(sigma[col]);
                if h <= limit {
                    f(left, col);
                }
                if limit == 0 {
                    break;
                }
                // the state point and markers of this column now lie inside
                // every wider rectangle
                limit = limit
                    .min(h)
                    .min(offset(self.o[col]))
                    .min(offset(self.x[col]));
            }
        }
    }
}

/// All empty rectangles out of `s`, sorted by target state then rectangle.
pub fn empty_rectangles_from(g: &GridDiagram, s: &GridState) -> Vec<(GridState, Rectangle)> {
    assert_eq!(g.size(), s.size(), "state size does not match grid");
    let markers = MarkerRows::new(g);
    let sigma = s.sigma();
    let mut out = Vec::new();
    markers.for_each_empty(sigma, |left, right| {
        let rect = Rectangle {
            left: left as u8,
            right: right as u8,
            bottom: sigma[left],
            top: sigma[right],
        };
        out.push((s.swapped(left, right), rect));
    });
    out.sort();
    out
}

/// Targets of `s` under the differential, with mod-2 multiplicity applied.
pub fn boundary_of(g: &GridDiagram, s: &GridState) -> Vec<GridState> {
    let mut targets: Vec<GridState> = empty_rectangles_from(g, s)
        .into_iter()
        .map(|(t, _)| t)
        .collect();
    cancel_pairs(&mut targets);
    targets
}

fn cancel_pairs<T: Ord>(items: &mut Vec<T>) {
    items.sort();
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for item in items.drain(..) {
        if out.last() == Some(&item) {
            out.pop();
        } else {
            out.push(item);
        }
    }
    *items = out;
}

/// Boundary map from `source_bucket` to `target_bucket`: entry `(t, s)` is the
/// parity of the number of empty rectangles from `s` to `t`.
///
/// Every source must have the same bigrading `(m, a)` and every target
/// `(m - 1, a)`; the first source fixes `(m, a)`.
pub fn boundary_matrix(
    g: &GridDiagram,
    source_bucket: &[GridState],
    target_bucket: &[GridState],
) -> Result<Gf2Matrix> {
    let mut matrix = Gf2Matrix::zeros(target_bucket.len(), source_bucket.len());
    let Some(first) = source_bucket.first() else {
        return Ok(matrix);
    };
    let grader = Grader::new(g)?;
    let expected = grader.grade(first.sigma());
    let below = Bigrading::new(expected.m - 1, expected.a);
    for s in source_bucket {
        check_grading(&grader, s, expected)?;
    }
    for t in target_bucket {
        check_grading(&grader, t, below)?;
    }
    let index: HashMap<&GridState, usize> = target_bucket
        .iter()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    for (col, s) in source_bucket.iter().enumerate() {
        for (t, _) in empty_rectangles_from(g, s) {
            if let Some(&row) = index.get(&t) {
                matrix.flip(row, col);
            }
        }
    }
    Ok(matrix)
}

fn check_grading(grader: &Grader, s: &GridState, expected: Bigrading) -> Result<()> {
    let actual = grader.grade(s.sigma());
    if actual != expected {
        return Err(Error::BucketGradingMismatch {
            state: s.sigma().to_vec(),
            expected,
            actual,
        });
    }
    Ok(())
}

/// Outcome of composing the differential with itself over a whole grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub states: u64,
    pub arrows: u64,
    /// First state whose image under the differential squared is nonzero.
    pub first_failure: Option<DSquaredFailure>,
    /// First arrow that does not drop Maslov grading by one and keep Alexander grading.
    pub grading_violation: Option<(Vec<u8>, Vec<u8>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DSquaredFailure {
    pub source: Vec<u8>,
    pub bigrading: Bigrading,
    pub residue: Vec<Vec<u8>>,
}

impl DSquaredReport {
    pub fn ok(&self) -> bool {
        self.first_failure.is_none() && self.grading_violation.is_none()
    }
}

/// Largest grid [`verify_d_squared`] accepts; it keeps every boundary in memory.
pub const D_SQUARED_MAX_N: usize = 9;

/// Checks that the differential squares to zero over GF(2) on every
/// bigrading, and that every arrow has degree `(-1, 0)`.
///
/// Links are accepted; for them only the Maslov drop is checked, since the
/// Alexander grading is defined for knots alone.
pub fn verify_d_squared(g: &GridDiagram) -> Result<DSquaredReport> {
    let n = g.size();
    if n > D_SQUARED_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: D_SQUARED_MAX_N,
        });
    }
    let knot = g.is_knot();
    let grader = Grader::any_grid(g);
    let markers = MarkerRows::new(g);
    let total = factorial(n);
    let mut gradings = Vec::with_capacity(total as usize);
    let grade = |sigma: &[u8]| {
        let b = grader.grade(sigma);
        if knot {
            b
        } else {
            Bigrading::new(b.m, 0)
        }
    };
    let mut boundary: Vec<Vec<u32>> = Vec::with_capacity(total as usize);
    let mut sigma: Vec<u8> = (0..n as u8).collect();
    let mut arrows = 0u64;
    loop {
        gradings.push(grade(&sigma));
        let mut targets = Vec::new();
        let mut t = sigma.clone();
        markers.for_each_empty(&sigma, |i, j| {
            t.swap(i, j);
            targets.push(crate::state::rank(&t) as u32);
            t.swap(i, j);
        });
        arrows += targets.len() as u64;
        cancel_pairs(&mut targets);
        boundary.push(targets);
        if !next_permutation(&mut sigma) {
            break;
        }
    }

    let mut report = DSquaredReport {
        states: total,
        arrows,
        first_failure: None,
        grading_violation: None,
    };
    let state = |r: u32| GridState::from_rank(n, r as u64).sigma().to_vec();

    // walk bigradings in order so the first failure is deterministic
    let mut order: Vec<u32> = (0..total as u32).collect();
    order.sort_by_key(|&r| (std::cmp::Reverse(gradings[r as usize]), r));
    for &s in &order {
        let gs = gradings[s as usize];
        if report.grading_violation.is_none() {
            if let Some(&t) = boundary[s as usize]
                .iter()
                .find(|&&t| gradings[t as usize] != Bigrading::new(gs.m - 1, gs.a))
            {
                report.grading_violation = Some((state(s), state(t)));
            }
        }
        if report.first_failure.is_none() {
            let mut second: Vec<u32> = boundary[s as usize]
                .iter()
                .flat_map(|&t| boundary[t as usize].iter().copied())
                .collect();
            cancel_pairs(&mut second);
            if !second.is_empty() {
                report.first_failure = Some(DSquaredFailure {
                    source: state(s),
                    bigrading: gs,
                    residue: second.into_iter().map(state).collect(),
                });
            }
        }
        if !report.ok() {
            break;
        }
    }
    Ok(report)
}
