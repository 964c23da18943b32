use thiserror::Error;

use crate::gradings::Bigrading;

/// Errors raised while building or validating a grid diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid size {0} is degenerate (need n >= 2)")]
    DegenerateSize(usize),
    #[error("{marker} markers do not form a permutation: {reason}")]
    NotAPermutation { marker: char, reason: String },
    #[error("column {column} holds both an O and an X marker (row {row})")]
    OverlappingMarker { column: usize, row: usize },
    #[error("columns {column} and {next} are not commutable")]
    NotCommutable { column: usize, next: usize },
    #[error("no destabilization pattern at column {column}, row {row}")]
    NotDestabilizable { column: usize, row: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown builtin grid {0:?}")]
    UnknownName(String),
}

/// Errors raised by the homology pipeline and invariant extraction.
///
/// `NotDivisible`, `NormalizationFailed` and `EmptyHomology` can only come
/// from a bug upstream: the underlying theorems rule them out for valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("grid has {components} components; only knots are supported")]
    NotAKnot { components: usize },
    #[error("grid size {n} exceeds the state-space limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("state {state:?} has bigrading {actual:?}, expected {expected:?}")]
    BucketGradingMismatch {
        state: Vec<u8>,
        expected: Bigrading,
        actual: Bigrading,
    },
    #[error("bigraded dimensions are not divisible by V^{power} (stuck at {at:?})")]
    NotDivisible { power: usize, at: Bigrading },
    #[error("Alexander polynomial evaluates to {value} at t = 1")]
    NormalizationFailed { value: i64 },
    #[error("homology is empty")]
    EmptyHomology,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
