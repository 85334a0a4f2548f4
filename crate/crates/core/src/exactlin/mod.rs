//! Exact complex-rational linear algebra: scalars, vectors, matrices, and
//! the rank / factorization kernels used throughout the crate.
//!
//! Everything here is immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

mod matrix;
mod scalar;
mod vector;

pub use matrix::{match_factor, outer, rank, rank_one_factor, Matrix};
pub use scalar::Scalar;
pub use vector::{collinear, Vector};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("expected a rank-one matrix, found rank {found} (0 means zero, 2 means at least 2)")]
    Rank { found: usize },
    #[error("matrix is not of the form w ⊗ v* for the given v")]
    Factor,
    #[error("scalar parse error: {0}")]
    Parse(String),
}
