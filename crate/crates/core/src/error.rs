//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent caller input (shape mismatches, overlapping
    /// groups, bad identifiers in files, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A worker id outside `0..n`.
    #[error("worker id {id} out of range for {n} workers")]
    IdOutOfRange { id: usize, n: usize },

    /// An exhaustive operation refused to run because the instance exceeds
    /// its configured size guard.
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
