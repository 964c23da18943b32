//! Toroidal grid diagrams and the moves between them.
//!
//! A grid of size `n` places one `O` and one `X` marker in every row and
//! every column of an `n x n` torus. Columns and rows are indexed from 0,
//! row 0 at the bottom, and all index arithmetic wraps mod `n`.
//!
//! Joining the `O` and `X` of each column by a vertical segment and the `X`
//! and `O` of each row by a horizontal segment (verticals passing over)
//! traces a link in S³; the grid is at the same time a Heegaard diagram for
//! the link complement with the marker cells as boundary punctures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GridError;

/// One of the two marker kinds of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    O,
    X,
}

/// A validated toroidal grid diagram. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridDiagram {
    n: usize,
    o: Vec<usize>,
    x: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    n: usize,
    o: Vec<usize>,
    x: Vec<usize>,
}

impl TryFrom<RawGrid> for GridDiagram {
    type Error = GridError;
    fn try_from(raw: RawGrid) -> Result<Self, GridError> {
        GridDiagram::new(raw.n, raw.o, raw.x)
    }
}

impl From<GridDiagram> for RawGrid {
    fn from(g: GridDiagram) -> Self {
        RawGrid {
            n: g.n,
            o: g.o,
            x: g.x,
        }
    }
}

fn check_permutation(n: usize, rows: &[usize], marker: char) -> Result<(), GridError> {
    if rows.len() != n {
        return Err(GridError::NotAPermutation {
            marker,
            reason: format!("expected {n} entries, found {}", rows.len()),
        });
    }
    let mut seen = vec![false; n];
    for (c, &r) in rows.iter().enumerate() {
        if r >= n {
            return Err(GridError::NotAPermutation {
                marker,
                reason: format!("row {r} in column {c} is out of range"),
            });
        }
        if std::mem::replace(&mut seen[r], true) {
            return Err(GridError::NotAPermutation {
                marker,
                reason: format!("row {r} is repeated"),
            });
        }
    }
    Ok(())
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

impl GridDiagram {
    /// Validates marker data and builds a grid. `o[c]` and `x[c]` are the
    /// rows of the markers in column `c`.
    pub fn new(n: usize, o: Vec<usize>, x: Vec<usize>) -> Result<Self, GridError> {
        if n < 2 {
            return Err(GridError::DegenerateSize(n));
        }
        check_permutation(n, &o, 'O')?;
        check_permutation(n, &x, 'X')?;
        if let Some(column) = (0..n).find(|&c| o[c] == x[c]) {
            return Err(GridError::OverlappingMarker {
                column,
                row: o[column],
            });
        }
        Ok(GridDiagram { n, o, x })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn o(&self) -> &[usize] {
        &self.o
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn markers(&self, marker: Marker) -> &[usize] {
        match marker {
            Marker::O => &self.o,
            Marker::X => &self.x,
        }
    }

    /// Number of components of the link the grid represents.
    ///
    /// Each column leads from its X up or down to its O; the row of that O
    /// then leads to the X of the next column. Components are the cycles of
    /// that column-to-column map.
    pub fn component_count(&self) -> usize {
        let o_column = invert(&self.o);
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = o_column[self.x[c]];
            }
        }
        count
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Cyclically shifts columns by `dx` and rows by `dy`.
    pub fn translate(&self, dx: i64, dy: i64) -> GridDiagram {
        let n = self.n;
        let dx = dx.rem_euclid(n as i64) as usize;
        let dy = dy.rem_euclid(n as i64) as usize;
        let mut o = vec![0; n];
        let mut x = vec![0; n];
        for c in 0..n {
            o[(c + dx) % n] = (self.o[c] + dy) % n;
            x[(c + dx) % n] = (self.x[c] + dy) % n;
        }
        GridDiagram { n, o, x }
    }

    /// Reflects across the diagonal, exchanging rows and columns.
    pub fn transpose(&self) -> GridDiagram {
        GridDiagram {
            n: self.n,
            o: invert(&self.o),
            x: invert(&self.x),
        }
    }

    /// Whether columns `c` and `c + 1` (mod n) may be exchanged.
    ///
    /// The vertical segments of the two columns must be disjoint or strictly
    /// nested. Spans that interleave, coincide or share an endpoint are
    /// rejected.
    pub fn columns_commutable(&self, c: usize) -> bool {
        let n = self.n;
        let c = c % n;
        let d = (c + 1) % n;
        let span = |col: usize| {
            let (a, b) = (self.o[col], self.x[col]);
            (a.min(b), a.max(b))
        };
        let (lo1, hi1) = span(c);
        let (lo2, hi2) = span(d);
        let disjoint = hi1 < lo2 || hi2 < lo1;
        let nested = (lo1 < lo2 && hi2 < hi1) || (lo2 < lo1 && hi1 < hi2);
        disjoint || nested
    }

    /// Exchanges columns `c` and `c + 1` (mod n).
    pub fn commute_columns(&self, c: usize) -> Result<GridDiagram, GridError> {
        let n = self.n;
        let c = c % n;
        let d = (c + 1) % n;
        if !self.columns_commutable(c) {
            return Err(GridError::NotCommutable { column: c, next: d });
        }
        let mut g = self.clone();
        g.o.swap(c, d);
        g.x.swap(c, d);
        Ok(g)
    }

    /// Stabilizes at the X marker of column `c`, producing a grid of size
    /// `n + 1` for the same knot.
    ///
    /// A new column is inserted at `c` and a new row at `r = x[c]`. The old
    /// `X(c, r)` becomes the three-marker block `O(c, r)`, `X(c, r + 1)`,
    /// `X(c + 1, r)`; every other marker keeps its cell after the shift.
    pub fn stabilize(&self, c: usize) -> GridDiagram {
        let n = self.n;
        let c = c % n;
        let r = self.x[c];
        let shift_row = |q: usize| if q >= r { q + 1 } else { q };
        let mut o = Vec::with_capacity(n + 1);
        let mut x = Vec::with_capacity(n + 1);
        for old in 0..n {
            if old == c {
                // new column c, then the old column c at c + 1
                o.push(r);
                x.push(r + 1);
                o.push(shift_row(self.o[c]));
                x.push(r);
            } else {
                o.push(shift_row(self.o[old]));
                x.push(shift_row(self.x[old]));
            }
        }
        GridDiagram { n: n + 1, o, x }
    }

    /// Whether the block at columns `c, c + 1` and rows `r, r + 1` is the one
    /// [`GridDiagram::stabilize`] produces.
    pub fn is_destabilizable(&self, c: usize, r: usize) -> bool {
        self.n >= 3
            && c + 1 < self.n
            && r + 1 < self.n
            && self.o[c] == r
            && self.x[c] == r + 1
            && self.x[c + 1] == r
    }

    /// Exact inverse of [`GridDiagram::stabilize`].
    pub fn destabilize(&self, c: usize, r: usize) -> Result<GridDiagram, GridError> {
        if !self.is_destabilizable(c, r) {
            return Err(GridError::NotDestabilizable { column: c, row: r });
        }
        let unshift = |q: usize| if q > r { q - 1 } else { q };
        let mut o = Vec::with_capacity(self.n - 1);
        let mut x = Vec::with_capacity(self.n - 1);
        for old in 0..self.n {
            if old == c {
                continue;
            }
            if old == c + 1 {
                o.push(unshift(self.o[old]));
                x.push(r);
            } else {
                o.push(unshift(self.o[old]));
                x.push(unshift(self.x[old]));
            }
        }
        Ok(GridDiagram {
            n: self.n - 1,
            o,
            x,
        })
    }

    /// Canonical three-line text form.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    /// Parses the text grid format:
    ///
    /// ```text
    /// # optional comments
    /// grid 2
    /// O 1 0
    /// X 0 1
    /// ```
    pub fn parse(text: &str) -> Result<GridDiagram, GridError> {
        parse_grid(text)
    }

    pub fn apply(&self, mv: &GridMove) -> Result<GridDiagram, GridError> {
        match *mv {
            GridMove::Translate { dx, dy } => Ok(self.translate(dx, dy)),
            GridMove::Transpose => Ok(self.transpose()),
            GridMove::CommuteColumns(c) => self.commute_columns(c),
            GridMove::Stabilize(c) => Ok(self.stabilize(c)),
            GridMove::Destabilize { column, row } => self.destabilize(column, row),
        }
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid {}", self.n)?;
        for (tag, rows) in [('O', &self.o), ('X', &self.x)] {
            write!(f, "{tag}")?;
            for r in rows {
                write!(f, " {r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A replayable grid move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMove {
    Translate { dx: i64, dy: i64 },
    Transpose,
    CommuteColumns(usize),
    Stabilize(usize),
    Destabilize { column: usize, row: usize },
}

fn parse_grid(text: &str) -> Result<GridDiagram, GridError> {
    let err = |line: usize, column: usize, message: String| GridError::Parse {
        line,
        column,
        message,
    };
    let mut size: Option<usize> = None;
    let mut o: Option<Vec<usize>> = None;
    let mut x: Option<Vec<usize>> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        // (1-based column, token)
        let mut tokens = raw
            .char_indices()
            .filter(|&(i, ch)| {
                !ch.is_whitespace() && (i == 0 || raw[..i].ends_with(char::is_whitespace))
            })
            .map(|(i, _)| {
                let rest = &raw[i..];
                let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                (i + 1, &rest[..end])
            });
        let (kw_col, keyword) = tokens.next().expect("non-empty line has a token");
        match keyword {
            "grid" => {
                if size.is_some() {
                    return Err(err(line_no, kw_col, "duplicate grid header".into()));
                }
                let (col, tok) = tokens
                    .next()
                    .ok_or_else(|| err(line_no, raw.len() + 1, "missing grid size".into()))?;
                let n = tok
                    .parse::<usize>()
                    .map_err(|_| err(line_no, col, format!("invalid grid size {tok:?}")))?;
                if let Some((col, tok)) = tokens.next() {
                    return Err(err(line_no, col, format!("unexpected token {tok:?}")));
                }
                size = Some(n);
            }
            "O" | "X" => {
                let n = size
                    .ok_or_else(|| err(line_no, kw_col, "marker line before grid header".into()))?;
                let slot = if keyword == "O" { &mut o } else { &mut x };
                if slot.is_some() {
                    return Err(err(line_no, kw_col, format!("duplicate {keyword} line")));
                }
                let mut rows = Vec::with_capacity(n);
                for (col, tok) in tokens {
                    let r = tok
                        .parse::<usize>()
                        .map_err(|_| err(line_no, col, format!("invalid row index {tok:?}")))?;
                    rows.push(r);
                }
                if rows.len() != n {
                    return Err(err(
                        line_no,
                        kw_col,
                        format!("expected {n} row indices, found {}", rows.len()),
                    ));
                }
                *slot = Some(rows);
            }
            other => {
                return Err(err(line_no, kw_col, format!("unknown keyword {other:?}")));
            }
        }
    }

    let n = size.ok_or_else(|| err(last_line.max(1), 1, "missing grid header".into()))?;
    let o = o.ok_or_else(|| err(last_line.max(1), 1, "missing O line".into()))?;
    let x = x.ok_or_else(|| err(last_line.max(1), 1, "missing X line".into()))?;
    GridDiagram::new(n, o, x)
}
