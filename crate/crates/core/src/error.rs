use thiserror::Error;

/// Errors raised by the laboratory.
///
/// The variants map onto the failure classes the command-line front end
/// distinguishes (parameter/config, capability, numeric).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: String, reason: String },

    #[error("point outside the domain of the reference evaluator: {0}")]
    Domain(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("numeric failure: {message} (best residual {best_residual:e})")]
    NumericFailure { message: String, best_residual: f64 },

    #[error("schedule error: {0}")]
    Schedule(String),

    #[error("evaluation point too close to a pole (distance {distance:e})")]
    PoleProximity { distance: f64 },

    #[error("missing capability: {0}")]
    Capability(String),

    #[error("grid error: {0}")]
    Grid(String),
}

impl Error {
    pub(crate) fn param(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parameter { field: field.into(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
