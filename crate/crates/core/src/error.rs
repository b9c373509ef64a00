use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {error_estimate:e} after {evaluations} evaluations")]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("root finding failed: {0}")]
    RootNotBracketed(String),

    #[error("{0} has no closed form; use the quadrature path")]
    UnsupportedVariant(String),
}

impl Error {
    /// True for failures of an iterative numerical method (as opposed to bad input).
    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. } | Error::RootNotBracketed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
