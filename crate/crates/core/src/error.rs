use thiserror::Error;

/// Failures surfaced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values were defined over a different number of alternatives.
    #[error("dimension mismatch: expected {expected} alternatives, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A combinatorial table or enumeration would exceed its configured size.
    #[error("capacity exceeded: {what} requested for K={k}, limit is K={limit}")]
    Capacity {
        what: &'static str,
        k: usize,
        limit: usize,
    },

    /// The pivot handed to a stability check does not satisfy Flexible Condition 1.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format on line {line}: {message}")]
    UnsupportedFormat { line: usize, message: String },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// Short machine-readable class name, stable across releases.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Argument(_) => "argument",
            Error::Capacity { .. } => "capacity",
            Error::Precondition(_) => "precondition",
            Error::Parse { .. } => "parse",
            Error::UnsupportedFormat { .. } => "unsupported_format",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
