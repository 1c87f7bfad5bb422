use thiserror::Error;

/// Errors raised by segment construction, solvers and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Vandermonde system is numerically singular: the set is not unisolvent.
    #[error("singular system: pivot {pivot} has magnitude {magnitude:e} below threshold {threshold:e}")]
    SingularSystem {
        pivot: usize,
        magnitude: f64,
        threshold: f64,
    },

    /// Arc radius hits `k*pi/j` for some `1 <= k < j <= r`.
    #[error("resonant arc radius {rho}: coincides with {k}*pi/{j}")]
    ResonantRadius { rho: f64, k: usize, j: usize },

    #[error("function returned a non-finite value at x = {x}")]
    NonFiniteValue { x: f64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
