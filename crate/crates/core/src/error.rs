use thiserror::Error;

/// Errors raised by the core library.
///
/// Validation problems that are findings rather than misuse (Jacobi
/// violations, grading violations, obstructions) are reported through
/// diagnostics or `Option`s, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. Indicates either inconsistent
    /// input data (e.g. a linear algebra that is not closed) or a bug.
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
