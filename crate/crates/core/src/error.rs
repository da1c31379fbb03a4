use thiserror::Error;

pub type Result<T, E = CasimirError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CasimirError {
    #[error("invalid {quantity}: {reason}")]
    Domain {
        quantity: &'static str,
        reason: String,
    },

    /// Quadrature or Matsubara sum failed to reach the requested accuracy.
    #[error("numerical failure in {stage}: {reason} (estimate {estimate:e}, error {error:e}, evaluations {evaluations})")]
    Numerical {
        stage: &'static str,
        reason: String,
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("{0}")]
    Usage(String),
}

impl CasimirError {
    pub fn domain(quantity: &'static str, reason: impl Into<String>) -> Self {
        CasimirError::Domain {
            quantity,
            reason: reason.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CasimirError::Usage(message.into())
    }
}
