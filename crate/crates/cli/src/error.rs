use thiserror::Error;

/// Process exit status on success.
pub const EXIT_OK: i32 = 0;
/// At least one verification check failed.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Bad arguments, unreadable config file or invalid physical input.
pub const EXIT_USAGE: i32 = 2;
/// A quadrature or root search did not converge.
pub const EXIT_NON_CONVERGENCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Numeric(#[from] casimir_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{failed} of {total} verification checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(e) if e.is_non_convergence() => EXIT_NON_CONVERGENCE,
            CliError::Numeric(_) => EXIT_USAGE,
            CliError::VerifyFailed { .. } => EXIT_VERIFY_FAILED,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        let bad_input = casimir_core::Error::Domain("b < 1".into());
        assert_eq!(CliError::from(bad_input).exit_code(), EXIT_USAGE);
        let stuck = casimir_core::Error::QuadratureNonConvergence {
            value: 1.0,
            error_estimate: 1.0,
            evaluations: 10,
        };
        assert_eq!(CliError::from(stuck).exit_code(), EXIT_NON_CONVERGENCE);
        assert_eq!(
            CliError::VerifyFailed { failed: 1, total: 11 }.exit_code(),
            EXIT_VERIFY_FAILED
        );
    }
}
