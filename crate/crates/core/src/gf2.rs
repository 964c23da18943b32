//! Linear algebra over the two-element field.
//!
//! [`Gf2Matrix`] is a dense, bit-packed matrix used for small boundary maps
//! and the full-complex oracle. [`SparseGf2Matrix`] holds the large, very
//! sparse boundary maps of the bucketed pipeline; its rank routine peels off
//! singleton rows and columns before running pivot elimination on the rest.

use std::collections::HashMap;
use std::fmt;

const WORD: usize = 64;

/// Dense matrix over GF(2), one bit-packed `Vec<u64>` per row.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows; any odd entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.row_words(i)[j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.words_per_row + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.words_per_row + j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Matrix product over GF(2). Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        let wpr = out.words_per_row;
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = rhs.row_words(k);
                    let dst = &mut out.data[i * wpr..(i + 1) * wpr];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on the packed rows.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let wpr = self.words_per_row;
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..self.rows).find(|&r| work[r * wpr + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..wpr {
                    work.swap(pivot * wpr + k, rank * wpr + k);
                }
            }
            let (head, tail) = work.split_at_mut((rank + 1) * wpr);
            let pivot_row = &head[rank * wpr..];
            for row in tail.chunks_exact_mut(wpr) {
                if row[w] & bit != 0 {
                    for k in w..wpr {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Sparse matrix over GF(2): each row is a sorted list of column indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseGf2Matrix {
    cols: usize,
    rows: Vec<Vec<u32>>,
}

impl SparseGf2Matrix {
    pub fn new(cols: usize) -> Self {
        SparseGf2Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as column indices; repeated indices cancel in pairs.
    pub fn push_row(&mut self, mut entries: Vec<u32>) {
        entries.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(entries.len());
        for e in entries {
            assert!((e as usize) < self.cols, "column {e} out of range");
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        self.rows.push(out);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &j in row {
                m.set(i, j as usize, true);
            }
        }
        m
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = peel_singletons(&mut rows, self.cols);
        rows.retain(|r| !r.is_empty());
        rank += pivot_reduce(rows);
        rank
    }
}

/// Removes rows and columns of weight one, returning how much rank they carry.
///
/// A column met by a single row makes that row independent of all others; a
/// row with a single entry can clear its column from every other row. Both
/// cases contribute exactly one to the rank.
fn peel_singletons(rows: &mut [Vec<u32>], cols: usize) -> usize {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    for (i, row) in rows.iter().enumerate() {
        for &c in row {
            col_rows[c as usize].push(i as u32);
        }
    }
    let mut col_weight: Vec<u32> = col_rows.iter().map(|v| v.len() as u32).collect();
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; cols];
    let mut rank = 0;

    let mut col_queue: Vec<u32> = (0..cols as u32)
        .filter(|&c| col_weight[c as usize] == 1)
        .collect();
    let mut row_queue: Vec<u32> = (0..rows.len() as u32)
        .filter(|&r| rows[r as usize].len() == 1)
        .collect();

    loop {
        if let Some(c) = col_queue.pop() {
            let c = c as usize;
            if !col_alive[c] || col_weight[c] != 1 {
                continue;
            }
            let r = col_rows[c]
                .iter()
                .copied()
                .find(|&r| {
                    row_alive[r as usize] && rows[r as usize].binary_search(&(c as u32)).is_ok()
                })
                .expect("weight-one column has a live row") as usize;
            row_alive[r] = false;
            rank += 1;
            for &c2 in &rows[r] {
                let c2 = c2 as usize;
                col_weight[c2] -= 1;
                if col_weight[c2] == 1 && col_alive[c2] {
                    col_queue.push(c2 as u32);
                }
            }
            col_alive[c] = false;
            rows[r].clear();
            continue;
        }
        if let Some(r) = row_queue.pop() {
            let r = r as usize;
            if !row_alive[r] || rows[r].len() != 1 {
                continue;
            }
            let c = rows[r][0] as usize;
            row_alive[r] = false;
            rows[r].clear();
            rank += 1;
            col_alive[c] = false;
            for &other in &col_rows[c] {
                let other = other as usize;
                if !row_alive[other] {
                    continue;
                }
                if let Ok(pos) = rows[other].binary_search(&(c as u32)) {
                    rows[other].remove(pos);
                    match rows[other].len() {
                        0 => row_alive[other] = false,
                        1 => row_queue.push(other as u32),
                        _ => {}
                    }
                }
            }
            col_weight[c] = 0;
            continue;
        }
        break;
    }
    for (r, alive) in row_alive.iter().enumerate() {
        if !alive {
            rows[r].clear();
        }
    }
    rank
}

fn xor_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Row reduction keyed on each row's largest column index.
fn pivot_reduce(mut rows: Vec<Vec<u32>>) -> usize {
    // sparse rows first keeps fill-in down
    rows.sort_by_key(Vec::len);
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut scratch = Vec::new();
    for mut row in rows {
        while let Some(&lead) = row.last() {
            match pivots.get(&lead) {
                Some(p) => {
                    xor_sorted(&row, p, &mut scratch);
                    std::mem::swap(&mut row, &mut scratch);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
