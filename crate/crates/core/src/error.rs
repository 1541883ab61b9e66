use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Constructor parameters violate a precondition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// No square of the requested kind exists.
    #[error("nonexistence: {0}")]
    Nonexistence(String),
    /// The inner distance of an order-1 square is undefined.
    #[error("inner distance undefined for a square of order 1")]
    UndefinedDistance,
    /// A grid could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A constructor produced a square that failed its own validator.
    #[error("construction failed validation: {0}")]
    Construction(String),
    /// The square lacks the cyclic structure needed for canonicalization.
    #[error("not reducible to circulant form: {0}")]
    NotReducible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn parameter(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
