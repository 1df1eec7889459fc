use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("leg count mismatch: {left:?} vs {right:?} (upper, lower)")]
    LegCountMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("color mismatch when gluing {top} onto {bottom}")]
    ColorMismatch { top: String, bottom: String },

    #[error("partition has a block of odd size")]
    OddBlock,

    #[error("{legs} legs exceed the configured bound of {bound}")]
    LegBoundExceeded { legs: usize, bound: usize },

    #[error("matrix dimension {dim} exceeds the size bound {bound}")]
    SizeBoundExceeded { dim: u128, bound: u128 },

    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("Gram matrix is singular: rank {rank} < dimension {dim}")]
    GramSingular { rank: usize, dim: usize },

    #[error("{0} is not a noncrossing pairing with equal rows")]
    NotTemperleyLieb(String),

    #[error("Temperley-Lieb operands disagree on {0}")]
    TlMismatch(&'static str),

    #[error("input matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
