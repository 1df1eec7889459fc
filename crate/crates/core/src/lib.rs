//! Easy quantum groups through their categories of partitions.

pub mod category;
pub mod cli;
pub mod error;
pub mod hyperspherical;
pub mod laws;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod tensor_map;
pub mod tl;
pub mod union_find;
pub mod verify;
pub mod weingarten;

pub use error::{Error, Result};

/// Exact scalar used for all rational computations.
pub type ExactScalar = num_rational::BigRational;
