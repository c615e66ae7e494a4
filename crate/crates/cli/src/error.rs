use serde::Serialize;
use syment_core::Error as CoreError;
use thiserror::Error;

/// Failures surfaced by the CLI, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                CoreError::BudgetExceeded { .. } => 3,
                CoreError::InfeasibleRate { .. } | CoreError::Numerical(_) => 4,
                _ => 2,
            },
            CliError::Io(_) | CliError::ChecksFailed(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => match e {
                CoreError::InvalidArgument(_) => "invalid_argument",
                CoreError::BudgetExceeded { .. } => "budget_exceeded",
                CoreError::MissingCValues => "missing_c_values",
                CoreError::InfeasibleRate { .. } => "infeasible_rate",
                CoreError::UnsupportedDimension { .. } => "unsupported_dimension",
                CoreError::Numerical(_) => "numerical",
            },
            CliError::Io(_) => "io",
            CliError::ChecksFailed(_) => "checks_failed",
        }
    }

    /// The structured record printed on stderr.
    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            error: ErrorBody {
                kind: self.kind(),
                message: self.to_string(),
            },
            exit_code: self.exit_code(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: ErrorBody,
    pub exit_code: u8,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
