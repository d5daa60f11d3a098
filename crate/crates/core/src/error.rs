use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("result out of range: ln|value| = {log_value}")]
    Overflow { log_value: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("tolerance not met: error estimate {error_estimate:e} exceeds target {target:e}")]
    Tolerance { error_estimate: f64, target: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
