//! Knot invariants read off the grid homology: knot Floer homology after
//! removing the excess-suture factor, the Alexander polynomial, Seifert
//! genus and fiberedness.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gradings::Bigrading;
use crate::grid::GridDiagram;
use crate::homology::{run_pipeline, BigradedDimensions, HomologyOptions};

/// Laurent polynomial in `t` with integer coefficients; zero terms are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Invariant under `t -> 1/t`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    /// Exact quotient by `1 + eps * t^-1` (`eps` is `+1` or `-1`), or `None`
    /// when the division leaves a remainder.
    pub fn div_by_one_plus_inverse(&self, eps: i64) -> Option<Self> {
        let Some(floor) = self.min_degree() else {
            return Some(Self::zero());
        };
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        while let Some(top) = rest.max_degree() {
            // the quotient lives strictly above the dividend's lowest term
            if top <= floor {
                return None;
            }
            let c = rest.coeff(top);
            quotient.add_term(top, c);
            rest.add_term(top, -c);
            rest.add_term(top - 1, -eps * c);
        }
        Some(quotient)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { '-' } else { '+' };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.unsigned_abs();
            match (e, abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{abs}t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // integer keys come out as strings, in ascending numeric order
        s.collect_map(self.terms())
    }
}

/// The bigraded space with generators at `(0, 0)` and `(-1, -1)`.
const V_SHIFT: Bigrading = Bigrading::new(-1, -1);

fn shifted(b: Bigrading) -> Bigrading {
    Bigrading::new(b.m + V_SHIFT.m, b.a + V_SHIFT.a)
}

/// Tensors with `V^power`.
pub fn tensor_v(h: &BigradedDimensions, power: usize) -> BigradedDimensions {
    let mut cur = h.clone();
    for _ in 0..power {
        let mut next = cur.clone();
        for (b, d) in cur.iter() {
            next.add(shifted(b), d);
        }
        cur = next;
    }
    cur
}

/// Divides tilde grid homology of a size-`n` grid by `V^(n-1)`.
///
/// Each factor is peeled greedily from the largest remaining bigrading: its
/// whole dimension must belong to the quotient, and the `(-1, -1)` copy is
/// then removed as well.
pub fn divide_v_factor(gh: &BigradedDimensions, n: usize) -> Result<BigradedDimensions> {
    let power = n.saturating_sub(1);
    let mut cur = gh.clone();
    for _ in 0..power {
        let mut rest = cur;
        let mut quotient = BigradedDimensions::new();
        while let Some(top) = rest.max_bigrading() {
            let d = rest[top];
            if !(rest.remove(top, d) && rest.remove(shifted(top), d)) {
                return Err(Error::NotDivisible { power, at: top });
            }
            quotient.add(top, d);
        }
        cur = quotient;
    }
    Ok(cur)
}

/// Euler characteristic `sum (-1)^m t^a dim`.
pub fn euler_characteristic(h: &BigradedDimensions) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(h.iter().map(|(b, d)| {
        (
            b.a,
            if b.m.rem_euclid(2) == 0 {
                d as i64
            } else {
                -(d as i64)
            },
        )
    }))
}

/// Raw Euler characteristic and its sign-normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    pub raw: LaurentPolynomial,
    pub normalized: LaurentPolynomial,
}

/// Alexander polynomial from knot Floer homology, signed so that `Δ(1) = 1`.
pub fn alexander_polynomial(hfk: &BigradedDimensions) -> Result<AlexanderPolynomial> {
    let raw = euler_characteristic(hfk);
    let normalized = match raw.eval_at_one() {
        1 => raw.clone(),
        -1 => raw.neg(),
        value => return Err(Error::NormalizationFailed { value }),
    };
    Ok(AlexanderPolynomial { raw, normalized })
}

/// Largest Alexander grading supporting homology.
pub fn genus(hfk: &BigradedDimensions) -> Result<i32> {
    hfk.iter()
        .map(|(b, _)| b.a)
        .max()
        .ok_or(Error::EmptyHomology)
}

/// Total dimension in the top Alexander grading.
pub fn top_grading_dimension(hfk: &BigradedDimensions) -> u64 {
    match genus(hfk) {
        Ok(g) => hfk.alexander_totals()[&g],
        Err(_) => 0,
    }
}

/// The knot complement fibers over the circle iff the top Alexander grading is one-dimensional.
pub fn is_fibered(hfk: &BigradedDimensions) -> bool {
    top_grading_dimension(hfk) == 1
}

/// `dim (m, a) == dim (m - 2a, -a)` everywhere.
pub fn check_symmetry(hfk: &BigradedDimensions) -> bool {
    hfk.iter()
        .all(|(b, d)| hfk[Bigrading::new(b.m - 2 * b.a, -b.a)] == d)
}

/// Homology is supported in `|a| <= genus`.
pub fn vanishes_outside_genus(hfk: &BigradedDimensions) -> bool {
    match genus(hfk) {
        Ok(g) => hfk.iter().all(|(b, _)| b.a.abs() <= g),
        Err(_) => false,
    }
}

/// Everything computed for one knot grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotReport {
    pub grid: GridDiagram,
    pub gh_tilde: BigradedDimensions,
    pub hfk: BigradedDimensions,
    pub alexander: LaurentPolynomial,
    pub alexander_raw: LaurentPolynomial,
    pub genus: i32,
    pub fibered: bool,
    pub symmetric: bool,
    pub vanishing_ok: bool,
    /// Wall-clock milliseconds per stage; never serialized so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timing {
    pub homology_ms: u128,
    pub total_ms: u128,
}

impl KnotReport {
    pub fn hfk_total(&self) -> u64 {
        self.hfk.total()
    }

    pub fn top_grading_dimension(&self) -> u64 {
        top_grading_dimension(&self.hfk)
    }

    /// Canonical JSON (fixed key order, integers only).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn full_report(g: &GridDiagram) -> Result<KnotReport> {
    full_report_with(g, &HomologyOptions::default())
}

pub fn full_report_with(g: &GridDiagram, opts: &HomologyOptions) -> Result<KnotReport> {
    let start = Instant::now();
    let gh = run_pipeline(g, opts)?.homology;
    let homology_ms = start.elapsed().as_millis();
    let hfk = divide_v_factor(&gh, g.size())?;
    let alexander = alexander_polynomial(&hfk)?;
    let genus = genus(&hfk)?;
    Ok(KnotReport {
        grid: g.clone(),
        fibered: is_fibered(&hfk),
        symmetric: check_symmetry(&hfk),
        vanishing_ok: vanishes_outside_genus(&hfk),
        gh_tilde: gh,
        hfk,
        alexander: alexander.normalized,
        alexander_raw: alexander.raw,
        genus,
        timing: Timing {
            homology_ms,
            total_ms: start.elapsed().as_millis(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dims(entries: &[(i32, i32, u64)]) -> BigradedDimensions {
        entries
            .iter()
            .map(|&(m, a, d)| (Bigrading::new(m, a), d))
            .collect()
    }

    fn poly(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn v_division_examples() {
        let unknot = dims(&[(0, 0, 1), (-1, -1, 1)]);
        assert_eq!(divide_v_factor(&unknot, 2).unwrap(), dims(&[(0, 0, 1)]));
        assert!(matches!(
            divide_v_factor(&dims(&[(0, 0, 1), (-1, -1, 2)]), 2),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            divide_v_factor(&dims(&[(0, 0, 1)]), 2),
            Err(Error::NotDivisible { .. })
        ));
        // size-1 quotient power is the identity
        assert_eq!(divide_v_factor(&unknot, 1).unwrap(), unknot);
    }

    #[test]
    fn polynomial_basics() {
        let tref = poly(&[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(tref.to_string(), "t - 1 + t^-1");
        assert_eq!(
            poly(&[(1, -1), (0, 3), (-1, -1)]).to_string(),
            "-t + 3 - t^-1"
        );
        assert_eq!(poly(&[(2, 2), (-3, -4)]).to_string(), "2t^2 - 4t^-3");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert!(tref.is_symmetric());
        assert!(!poly(&[(1, 1)]).is_symmetric());
        assert_eq!(tref.eval_at_one(), 1);
        assert_eq!(
            serde_json::to_string(&poly(&[(-2, 1), (10, 1), (-1, 3)])).unwrap(),
            r#"{"-2":1,"-1":3,"10":1}"#
        );
        let binom = poly(&[(0, 1), (-1, -1)]);
        let prod = tref.mul(&binom.pow(3));
        assert_eq!(
            prod.div_by_one_plus_inverse(-1)
                .and_then(|p| p.div_by_one_plus_inverse(-1))
                .and_then(|p| p.div_by_one_plus_inverse(-1)),
            Some(tref.clone())
        );
        assert_eq!(poly(&[(0, 1)]).div_by_one_plus_inverse(1), None);
    }

    #[test]
    fn alexander_examples() {
        let a = alexander_polynomial(&dims(&[(0, 0, 1)])).unwrap();
        assert_eq!(a.normalized, LaurentPolynomial::one());
        let tref = alexander_polynomial(&dims(&[(2, 1, 1), (1, 0, 1), (0, -1, 1)])).unwrap();
        assert_eq!(tref.normalized, poly(&[(1, 1), (0, -1), (-1, 1)]));
        let fig8 = alexander_polynomial(&dims(&[(1, 1, 1), (0, 0, 3), (-1, -1, 1)])).unwrap();
        assert_eq!(fig8.normalized, poly(&[(1, -1), (0, 3), (-1, -1)]));
        // raw sum of -1 gets its sign flipped
        let flipped = alexander_polynomial(&dims(&[(1, 0, 1)])).unwrap();
        assert_eq!(flipped.raw, poly(&[(0, -1)]));
        assert_eq!(flipped.normalized, LaurentPolynomial::one());
        assert_eq!(
            alexander_polynomial(&dims(&[(0, 0, 3)])),
            Err(Error::NormalizationFailed { value: 3 })
        );
    }

    #[test]
    fn genus_fibered_symmetry_examples() {
        let unknot = dims(&[(0, 0, 1)]);
        let tref = dims(&[(2, 1, 1), (1, 0, 1), (0, -1, 1)]);
        let k52 = dims(&[(0, 1, 2), (-1, 0, 3), (-2, -1, 2)]);
        assert_eq!(genus(&unknot), Ok(0));
        assert_eq!(genus(&tref), Ok(1));
        assert_eq!(genus(&BigradedDimensions::new()), Err(Error::EmptyHomology));
        assert!(is_fibered(&unknot) && is_fibered(&tref));
        assert!(!is_fibered(&k52));
        assert_eq!(top_grading_dimension(&k52), 2);
        assert!(check_symmetry(&unknot) && check_symmetry(&tref) && check_symmetry(&k52));
        assert!(!check_symmetry(&dims(&[(0, 1, 1)])));
        assert!(vanishes_outside_genus(&tref));
        assert!(!vanishes_outside_genus(&dims(&[(0, 1, 1), (0, -3, 1)])));
    }

    proptest! {
        #[test]
        fn v_division_inverts_tensoring(
            entries in prop::collection::vec((-6i32..6, -6i32..6, 1u64..4), 1..8),
            power in 0usize..5,
        ) {
            let h: BigradedDimensions = entries
                .into_iter()
                .map(|(m, a, d)| (Bigrading::new(m, a), d))
                .collect();
            let big = tensor_v(&h, power);
            prop_assert_eq!(big.total(), h.total() << power);
            prop_assert_eq!(divide_v_factor(&big, power + 1).unwrap(), h);
        }
    }
}
