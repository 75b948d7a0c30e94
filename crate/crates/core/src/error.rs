use thiserror::Error;

/// Errors produced by construction, verification and serialization.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration needs {needed} subsets but the budget is {budget}; use the vertex-connectivity method instead")]
    ResourceLimit { needed: u128, budget: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("trace validation failed at line {line}: {message}")]
    Trace { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
