use thiserror::Error;

use crate::numerics::Estimate;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(usize),

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("origin is not contained in the body")]
    OriginNotContained,

    #[error("origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("quadrature did not converge ({reason}); best estimate {} ± {}", best.value, best.std_error)]
    QuadratureFailure { best: Estimate, reason: String },

    #[error("no positive value found around the starting point")]
    ZeroFunctionRegion,

    #[error("not integrable: {0}")]
    NonIntegrable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("unbounded star body: {0}")]
    UnboundedBody(String),

    #[error("mellin branches disagree: direct {direct}, derivative form {derivative}")]
    BranchDisagreement { direct: f64, derivative: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
