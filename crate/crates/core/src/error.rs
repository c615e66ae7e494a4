use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("block spectrum has no per-k eigenvalues; c-measure unavailable")]
    MissingCValues,

    #[error("infeasible rate {rate}: maximal entropy is {max}")]
    InfeasibleRate { rate: f64, max: f64 },

    #[error("unsupported dimension d = {d} (supported up to {max})")]
    UnsupportedDimension { d: usize, max: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
