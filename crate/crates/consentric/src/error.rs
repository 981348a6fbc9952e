//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} does not exist (graph has {node_count} nodes)")]
    UnknownNode { node: usize, node_count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("{context} did not converge within {max_iter} iterations")]
    NoConvergence { context: &'static str, max_iter: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("numerical failure at step {step}: {msg}")]
    Numerical { step: usize, msg: String },

    #[error("scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
