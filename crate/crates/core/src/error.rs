use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument failed validation (non-finite, unnormalized, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix did not have the structure an operation requires.
    #[error("structural error: {0}")]
    Structural(String),

    /// The operation is undefined at this point of parameter space (e.g. T <= 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computed value violated an invariant by more than rounding allows.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
