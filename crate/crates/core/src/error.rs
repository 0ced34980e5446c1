use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid spin labels, probabilities or angles.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "product dimension {dim} exceeds the dense-matrix cap of {cap}; use the closed-form spin-1/2 formulas instead"
    )]
    Capacity { dim: usize, cap: usize },

    /// The requested outcome has zero probability under the prior.
    #[error("outcome `{0}` is impossible under the given prior")]
    ImpossibleOutcome(String),

    #[error("posterior puts mass {mass} at alpha = {alpha} where the prior has none")]
    Divergence { alpha: f64, mass: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
