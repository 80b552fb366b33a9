use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed user input: bad polynomial text, unknown symbol, schema violation.
    #[error("input error: {0}")]
    Input(String),

    /// Polynomial text that does not match the grammar.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Mathematically undefined request (negative power, n < 3, singular metric, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Arithmetic between a float and an exact value without explicit conversion.
    #[error("cannot mix float and exact scalars without explicit conversion")]
    MixedDomain,

    /// Tensor shape or variance mismatch.
    #[error("tensor error: {0}")]
    Tensor(String),

    /// An internal consistency check failed (e.g. convention drift).
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn tensor(msg: impl Into<String>) -> Self {
        Error::Tensor(msg.into())
    }
}
