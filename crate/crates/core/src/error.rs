use thiserror::Error;

use crate::blowup::BlowupChain;

/// Errors produced by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("iteration limit of {limit} blow-ups reached without separation")]
    IterationLimit {
        limit: usize,
        partial: Box<BlowupChain>,
    },

    #[error("search space exhausted: {0}")]
    Exhausted(String),

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Input(_) => 2,
            Error::IterationLimit { .. } | Error::Exhausted(_) => 3,
            Error::Domain(_) => 4,
            Error::Internal(_) => 5,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
