use thiserror::Error;

#[derive(Debug, Error)]
pub enum HcError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} exceeds budget: {size} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("schedule did not converge within {0} stages")]
    NoConvergence(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HcError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(HcError::InvalidArgument(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(HcError::Domain(msg.into()))
}
