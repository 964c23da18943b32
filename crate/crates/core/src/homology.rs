//! Bigraded homology of the tilde grid complex over GF(2).
//!
//! The differential keeps the Alexander grading and lowers the Maslov
//! grading by one, so the complex splits into one small chain complex per
//! Alexander grading. Every state is graded once, states are bucketed by
//! bigrading, and each bucket's outgoing boundary map is assembled and
//! reduced independently:
//!
//! `dim H(m, a) = |C(m, a)| - rank d(m, a) - rank d(m + 1, a)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::differential::MarkerRows;
use crate::error::{Error, Result};
use crate::gf2::SparseGf2Matrix;
use crate::gradings::{Bigrading, Grader};
use crate::grid::GridDiagram;
use crate::state::{factorial, next_permutation, rank, unrank_into, MAX_STATE_SPACE_N};

/// Finitely supported map from bigradings to positive dimensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BigradedDimensions {
    dims: BTreeMap<Bigrading, u64>,
}

impl BigradedDimensions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `dim` at `at`; zero contributions are ignored.
    pub fn add(&mut self, at: Bigrading, dim: u64) {
        if dim > 0 {
            *self.dims.entry(at).or_insert(0) += dim;
        }
    }

    /// Subtracts `dim` at `at`, returning false (and leaving the map
    /// unchanged) when that would go negative.
    pub fn remove(&mut self, at: Bigrading, dim: u64) -> bool {
        if dim == 0 {
            return true;
        }
        match self.dims.get_mut(&at) {
            Some(d) if *d >= dim => {
                *d -= dim;
                if *d == 0 {
                    self.dims.remove(&at);
                }
                true
            }
            _ => false,
        }
    }

    pub fn get(&self, at: Bigrading) -> u64 {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    /// Largest supported bigrading in (Maslov, Alexander) order.
    pub fn max_bigrading(&self) -> Option<Bigrading> {
        self.dims.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Bigrading, u64)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    /// Total dimension in each Alexander grading.
    pub fn alexander_totals(&self) -> BTreeMap<i32, u64> {
        let mut totals = BTreeMap::new();
        for (b, d) in self.iter() {
            *totals.entry(b.a).or_insert(0) += d;
        }
        totals
    }

    /// `[m, a, dim]` triples in ascending bigrading order.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.iter()
            .map(|(b, d)| [b.m as i64, b.a as i64, d as i64])
            .collect()
    }
}

impl FromIterator<(Bigrading, u64)> for BigradedDimensions {
    fn from_iter<T: IntoIterator<Item = (Bigrading, u64)>>(iter: T) -> Self {
        let mut out = BigradedDimensions::new();
        for (b, d) in iter {
            out.add(b, d);
        }
        out
    }
}

impl Index<Bigrading> for BigradedDimensions {
    type Output = u64;
    fn index(&self, at: Bigrading) -> &u64 {
        self.dims.get(&at).unwrap_or(&0)
    }
}

impl fmt::Display for BigradedDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (b, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{}):{}", b.m, b.a, d)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for BigradedDimensions {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedDimensions {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(d)?;
        triples
            .into_iter()
            .map(|[m, a, dim]| {
                let m = i32::try_from(m).map_err(serde::de::Error::custom)?;
                let a = i32::try_from(a).map_err(serde::de::Error::custom)?;
                let dim = u64::try_from(dim).map_err(serde::de::Error::custom)?;
                Ok((Bigrading::new(m, a), dim))
            })
            .collect()
    }
}

/// Knobs for the bucketed pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
}

impl HomologyOptions {
    pub fn with_workers(workers: usize) -> Self {
        HomologyOptions {
            workers: Some(workers.max(1)),
        }
    }

    /// Runs `f` on a pool of the requested size.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            None => f(),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool")
                .install(f),
        }
    }
}

/// Per-bucket bookkeeping collected by the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucketStats {
    pub bigrading: Bigrading,
    pub states: u64,
    /// Rank of the boundary map leaving this bucket.
    pub rank: u64,
    /// Nonzero entries of that boundary map.
    pub entries: u64,
}

/// Homology together with the bucket statistics that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyRun {
    pub homology: BigradedDimensions,
    pub buckets: Vec<BucketStats>,
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n > MAX_STATE_SPACE_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_STATE_SPACE_N,
        });
    }
    Ok(())
}

/// Bigraded dimensions of the tilde grid homology of a knot grid.
pub fn graded_homology(g: &GridDiagram) -> Result<BigradedDimensions> {
    graded_homology_with(g, &HomologyOptions::default())
}

pub fn graded_homology_with(g: &GridDiagram, opts: &HomologyOptions) -> Result<BigradedDimensions> {
    Ok(run_pipeline(g, opts)?.homology)
}

/// Walks ranks `start..start + out.len()` in lexicographic order.
fn grade_range(grader: &Grader, start: u64, out: &mut [[i8; 2]]) {
    let n = grader.size();
    let mut sigma = vec![0u8; n];
    unrank_into(start, &mut sigma);
    let len = out.len();
    for (k, slot) in out.iter_mut().enumerate() {
        let b = grader.grade(&sigma);
        *slot = [b.m as i8, b.a as i8];
        if k + 1 < len {
            next_permutation(&mut sigma);
        }
    }
}

pub fn run_pipeline(g: &GridDiagram, opts: &HomologyOptions) -> Result<HomologyRun> {
    let grader = Grader::new(g)?;
    let n = g.size();
    check_size(n)?;
    opts.install(|| pipeline(g, &grader))
}

fn pipeline(g: &GridDiagram, grader: &Grader) -> Result<HomologyRun> {
    let n = g.size();
    let total = factorial(n) as usize;

    // grading pass; Maslov and Alexander values stay far inside i8 for n <= 11
    let mut gradings = vec![[0i8; 2]; total];
    let chunk = factorial(n.min(7)) as usize;
    gradings
        .par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, out)| grade_range(grader, (i * chunk) as u64, out));

    // bucket by bigrading; ranks within a bucket ascend
    let mut buckets: BTreeMap<[i8; 2], Vec<u32>> = BTreeMap::new();
    for (r, key) in gradings.iter().enumerate() {
        buckets.entry(*key).or_default().push(r as u32);
    }
    drop(gradings);
    let mut local = vec![0u32; total];
    for states in buckets.values() {
        for (i, &r) in states.iter().enumerate() {
            local[r as usize] = i as u32;
        }
    }

    let markers = MarkerRows::new(g);
    let keys: Vec<[i8; 2]> = buckets.keys().copied().collect();
    let stats: Vec<BucketStats> = keys
        .par_iter()
        .map(|&key| {
            let sources = &buckets[&key];
            let below = [key[0] - 1, key[1]];
            let bigrading = Bigrading::new(key[0] as i32, key[1] as i32);
            let Some(targets) = buckets.get(&below) else {
                return BucketStats {
                    bigrading,
                    states: sources.len() as u64,
                    rank: 0,
                    entries: 0,
                };
            };
            let matrix = assemble(&markers, n, sources, targets.len(), &local);
            BucketStats {
                bigrading,
                states: sources.len() as u64,
                rank: matrix.rank() as u64,
                entries: matrix.nnz() as u64,
            }
        })
        .collect();

    let rank_of: BTreeMap<Bigrading, u64> = stats.iter().map(|s| (s.bigrading, s.rank)).collect();
    let homology = stats
        .iter()
        .map(|s| {
            let incoming = rank_of
                .get(&Bigrading::new(s.bigrading.m + 1, s.bigrading.a))
                .copied()
                .unwrap_or(0);
            (s.bigrading, s.states - s.rank - incoming)
        })
        .collect();
    Ok(HomologyRun {
        homology,
        buckets: stats,
    })
}

/// Boundary map leaving one bucket, rows indexed by source.
fn assemble(
    markers: &MarkerRows,
    n: usize,
    sources: &[u32],
    target_count: usize,
    local: &[u32],
) -> SparseGf2Matrix {
    let mut matrix = SparseGf2Matrix::new(target_count);
    let mut sigma = vec![0u8; n];
    let mut t = vec![0u8; n];
    for &r in sources {
        unrank_into(r as u64, &mut sigma);
        t.copy_from_slice(&sigma);
        let mut row = Vec::new();
        markers.for_each_empty(&sigma, |i, j| {
            t.swap(i, j);
            row.push(local[rank(&t) as usize]);
            t.swap(i, j);
        });
        matrix.push_row(row);
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::builtin;

    fn dims(entries: &[(i32, i32, u64)]) -> BigradedDimensions {
        entries
            .iter()
            .map(|&(m, a, d)| (Bigrading::new(m, a), d))
            .collect()
    }

    #[test]
    fn unknot_homology() {
        let h = graded_homology(&builtin("unknot2").unwrap()).unwrap();
        assert_eq!(h, dims(&[(0, 0, 1), (-1, -1, 1)]));
        assert_eq!(h.total(), 2);
        let h3 = graded_homology(&builtin("unknot3").unwrap()).unwrap();
        assert_eq!(h3, dims(&[(0, 0, 1), (-1, -1, 2), (-2, -2, 1)]));
    }

    #[test]
    fn trefoil_homology_matches_frozen_table() {
        // from an independent prototype of the full complex
        let h = graded_homology(&builtin("trefoil").unwrap()).unwrap();
        let expected = dims(&[
            (2, 1, 1),
            (1, 0, 5),
            (0, -1, 11),
            (-1, -2, 14),
            (-2, -3, 11),
            (-3, -4, 5),
            (-4, -5, 1),
        ]);
        assert_eq!(h, expected);
        assert_eq!(h.total(), 48);
    }

    #[test]
    fn links_are_rejected() {
        let link = GridDiagram::new(4, vec![1, 0, 3, 2], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            graded_homology(&link),
            Err(Error::NotAKnot { components: 2 })
        );
    }

    #[test]
    fn oversized_grids_are_rejected() {
        let n = MAX_STATE_SPACE_N + 1;
        let o: Vec<usize> = (0..n).collect();
        let x: Vec<usize> = (0..n).map(|c| (c + 1) % n).collect();
        let g = GridDiagram::new(n, o, x).unwrap();
        assert!(matches!(graded_homology(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let g = builtin("figure8").unwrap();
        let one = run_pipeline(&g, &HomologyOptions::with_workers(1)).unwrap();
        let three = run_pipeline(&g, &HomologyOptions::with_workers(3)).unwrap();
        assert_eq!(one, three);
        assert_eq!(one.homology.total(), 5 * 32);
    }

    #[test]
    fn dimensions_bookkeeping() {
        let mut d = dims(&[(0, 0, 2)]);
        assert!(!d.remove(Bigrading::new(0, 0), 3));
        assert!(d.remove(Bigrading::new(0, 0), 2));
        assert!(d.is_empty());
        d.add(Bigrading::new(1, 1), 0);
        assert!(d.is_empty());
        let d = dims(&[(0, 0, 1), (-1, -1, 1)]);
        assert_eq!(serde_json::to_string(&d).unwrap(), "[[-1,-1,1],[0,0,1]]");
        let back: BigradedDimensions = serde_json::from_str("[[-1,-1,1],[0,0,1]]").unwrap();
        assert_eq!(back, d);
        assert_eq!(d.to_string(), "{(-1,-1):1, (0,0):1}");
        assert_eq!(d[Bigrading::new(5, 5)], 0);
    }
}
