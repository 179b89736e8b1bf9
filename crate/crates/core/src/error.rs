use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments violate an operation's preconditions.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A difference family does not have the structure an operation needs.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Text could not be parsed into a family, parameter set or matrix.
    #[error("parse error (line {line}): {message}")]
    Parse { line: usize, message: String },

    /// Bundled data failed its checksum or structural checks.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// The exhaustive search was asked to run beyond its size cap.
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
