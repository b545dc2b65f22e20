//! Process-level error type: every failure maps to one of the two
//! non-logical exit codes (2 = usage or input problem, 3 = a configured
//! limit ran out).

use mrules_core::algebra::{EnumerateError, SizeLimitExceeded};
use mrules_core::freealg::FreeAlgebraError;
use mrules_core::semantics::BudgetExceeded;
use mrules_core::transforms::TransformError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation or bad input files: exit code 2.
    #[error("{0}")]
    Usage(String),

    /// A budget or size cap was exhausted before an answer: exit code 3.
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<BudgetExceeded> for CliError {
    fn from(e: BudgetExceeded) -> CliError {
        CliError::Limit(e.to_string())
    }
}

impl From<SizeLimitExceeded> for CliError {
    fn from(e: SizeLimitExceeded) -> CliError {
        CliError::Limit(e.to_string())
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> CliError {
        CliError::Limit(e.to_string())
    }
}

impl From<FreeAlgebraError> for CliError {
    fn from(e: FreeAlgebraError) -> CliError {
        CliError::Limit(e.to_string())
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> CliError {
        match e {
            TransformError::Budget(b) => CliError::Limit(b.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}
