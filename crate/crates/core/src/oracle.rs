//! Dense full-complex baseline for small grids.
//!
//! Deliberately shares nothing with the bucketed pipeline beyond the
//! definition-level grading functions: rectangles are found by testing every
//! lattice point and marker against each candidate rectangle, the whole
//! differential goes into one dense `n! x n!` matrix, and homology comes from
//! rank-nullity without using the Maslov grading at all. Knot data is read
//! off one-variable polynomials rather than bigraded division.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::gradings::{alexander, maslov};
use crate::grid::{GridDiagram, Marker};
use crate::invariants::LaurentPolynomial;
use crate::state::{factorial, next_permutation, GridState};

/// Largest grid the dense baseline accepts.
pub const ORACLE_MAX_N: usize = 6;

/// Whether `v` lies strictly inside the circular interval running up from
/// `start` for `len` units, all in doubled coordinates mod `2n`.
fn strictly_inside(v: i64, start: i64, len: i64, period: i64) -> bool {
    let off = (v - start).rem_euclid(period);
    off > 0 && off < len
}

/// Targets of `s` found by scanning every candidate rectangle point by point.
pub fn brute_force_targets(g: &GridDiagram, s: &GridState) -> Vec<(usize, usize)> {
    let n = g.size() as i64;
    let period = 2 * n;
    let sigma = s.sigma();
    let mut obstacles: Vec<(i64, i64)> = Vec::new();
    for c in 0..n {
        obstacles.push((2 * c, 2 * sigma[c as usize] as i64));
        obstacles.push((2 * c + 1, 2 * g.o()[c as usize] as i64 + 1));
        obstacles.push((2 * c + 1, 2 * g.x()[c as usize] as i64 + 1));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (x0, y0) = (2 * i, 2 * sigma[i as usize] as i64);
            let (x1, y1) = (2 * j, 2 * sigma[j as usize] as i64);
            let width = (x1 - x0).rem_euclid(period);
            let height = (y1 - y0).rem_euclid(period);
            let empty = obstacles.iter().all(|&(px, py)| {
                !(strictly_inside(px, x0, width, period) && strictly_inside(py, y0, height, period))
            });
            if empty {
                out.push((i as usize, j as usize));
            }
        }
    }
    out
}

/// What the dense baseline reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub states: u64,
    /// Total dimension of tilde grid homology.
    pub gh_total: u64,
    /// Tilde grid homology dimension in each Alexander grading.
    pub gh_by_alexander: BTreeMap<i32, u64>,
    /// Knot Floer homology dimension in each Alexander grading.
    pub hfk_by_alexander: BTreeMap<i32, u64>,
    pub hfk_total: u64,
    /// Euler characteristic divided by `(1 - t^-1)^(n-1)`, signed so `Δ(1) = 1`.
    pub alexander: LaurentPolynomial,
    pub genus: i32,
    pub fibered: bool,
}

/// Runs the dense baseline; refuses grids larger than [`ORACLE_MAX_N`].
pub fn dense_oracle(g: &GridDiagram) -> Result<OracleResult> {
    let n = g.size();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    let components = g.component_count();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let total = factorial(n) as usize;
    let mut states = Vec::with_capacity(total);
    let mut sigma: Vec<u8> = (0..n as u8).collect();
    loop {
        states.push(GridState::new(sigma.clone()));
        if !next_permutation(&mut sigma) {
            break;
        }
    }

    let mut full = Gf2Matrix::zeros(total, total);
    for (col, s) in states.iter().enumerate() {
        for (i, j) in brute_force_targets(g, s) {
            full.flip(s.swapped(i, j).rank() as usize, col);
        }
    }
    let gh_total = total as u64 - 2 * full.rank() as u64;

    // Alexander gradings and the state-level Euler characteristic
    let mut euler = LaurentPolynomial::zero();
    let mut by_alexander: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (idx, s) in states.iter().enumerate() {
        let a = alexander(g, s)? as i32;
        let m = maslov(g, s, Marker::O);
        euler.add_term(a, if m.rem_euclid(2) == 0 { 1 } else { -1 });
        by_alexander.entry(a).or_default().push(idx);
    }

    // the complex splits over Alexander grading; homology of each summand
    // by rank-nullity on the restricted square matrix
    let mut gh_by_alexander = BTreeMap::new();
    for (&a, idxs) in &by_alexander {
        let mut block = Gf2Matrix::zeros(idxs.len(), idxs.len());
        for (bi, &ri) in idxs.iter().enumerate() {
            for (bj, &cj) in idxs.iter().enumerate() {
                if full.get(ri, cj) {
                    block.set(bi, bj, true);
                }
            }
        }
        let dim = idxs.len() as u64 - 2 * block.rank() as u64;
        if dim > 0 {
            gh_by_alexander.insert(a, dim);
        }
    }

    // Alexander-graded totals of GH are those of HFK times (1 + t^-1)^(n-1)
    let mut hfk_poly =
        LaurentPolynomial::from_terms(gh_by_alexander.iter().map(|(&a, &d)| (a, d as i64)));
    let mut alex = euler;
    for _ in 1..n {
        hfk_poly = hfk_poly
            .div_by_one_plus_inverse(1)
            .ok_or(Error::NotDivisible {
                power: n - 1,
                at: Default::default(),
            })?;
        alex = alex
            .div_by_one_plus_inverse(-1)
            .ok_or(Error::NotDivisible {
                power: n - 1,
                at: Default::default(),
            })?;
    }
    let alex = match alex.eval_at_one() {
        1 => alex,
        -1 => alex.neg(),
        value => return Err(Error::NormalizationFailed { value }),
    };
    let hfk_by_alexander: BTreeMap<i32, u64> = hfk_poly
        .terms()
        .map(|(a, c)| (a, u64::try_from(c).expect("dimensions are non-negative")))
        .collect();
    let genus = *hfk_by_alexander
        .keys()
        .next_back()
        .ok_or(Error::EmptyHomology)?;
    Ok(OracleResult {
        n,
        states: total as u64,
        gh_total,
        hfk_total: hfk_by_alexander.values().sum(),
        fibered: hfk_by_alexander[&genus] == 1,
        gh_by_alexander,
        hfk_by_alexander,
        alexander: alex,
        genus,
    })
}
