use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncMismatch { left: usize, right: usize },

    #[error("truncation degree {trunc} exceeded (needs {needed})")]
    TruncationExceeded { trunc: usize, needed: usize },

    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("r-matrix is not involutive (R∘R ≠ id)")]
    NotInvolutive,

    #[error("chi_{order} is not primitive: internal consistency failure")]
    NonPrimitive { order: usize },

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("matrix exponential failed: {0}")]
    MatrixExp(String),

    #[error("parse error: {0}")]
    Parse(String),
}
