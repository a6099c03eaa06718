use thiserror::Error;

/// Errors raised by the pattern, enumeration, bijection and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("pattern length {0} exceeds the supported maximum of 9")]
    PatternTooLong(usize),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// An input outside the domain of an operation, e.g. a permutation that
    /// contains the pattern a bijection expects it to avoid.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
