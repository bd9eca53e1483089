use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid must be at least 2x2, got {height}x{width}")]
    TooSmall { height: usize, width: usize },
    #[error("row {row} has {got} cells, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("cell ({row}, {col}) = {value} exceeds the value bound {bound}")]
    ValueOutOfBounds { row: usize, col: usize, value: i64, bound: i64 },
    #[error("value bound {bound} times {cells} cells does not fit exact 64-bit arithmetic")]
    BoundOverflow { bound: i64, cells: usize },
    #[error("invalid value range [{lo}, {hi}]")]
    BadRange { lo: i64, hi: i64 },
    #[error("path escapes grid")]
    PathEscapesGrid,
    #[error("invalid step profile: {0}")]
    InvalidSteps(String),
    #[error("bounds/F mismatch")]
    BoundsMismatch,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("reduction requires finite grid")]
    NonFiniteGrid,
    #[error("no two disjoint paths")]
    NoDisjointPaths,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
