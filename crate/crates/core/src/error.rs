use thiserror::Error;

use crate::design::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator set")]
    EmptyGenerators,

    #[error("not a collineation: matrix is singular")]
    NotCollineation,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("geometry dimension {0} is out of range (1..={max})", max = crate::gf2::MAX_DIM)]
    DimensionOutOfRange(usize),

    #[error("invalid effect {0:?}")]
    InvalidEffect(String),

    #[error("not a flat: {0}")]
    NotAFlat(String),

    #[error("not a star: {0}")]
    NotAStar(String),

    #[error("invalid spread: {0}")]
    InvalidSpread(Violation),

    #[error("no balanced spread exists: {h} does not divide {u}")]
    NoBalancedSpread { u: usize, h: usize },

    #[error("polynomial {poly:#b} does not have degree {u}")]
    DegreeMismatch { poly: u64, u: usize },

    #[error("polynomial {0:#b} is not primitive")]
    NotPrimitive(u64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parameter mismatch: {0} vs {1}")]
    ParameterMismatch(String, String),

    #[error("{0}")]
    Unsupported(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
