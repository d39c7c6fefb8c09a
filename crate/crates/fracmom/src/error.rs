//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument outside the supported range of an operation.
    #[error("unsupported argument: {0}")]
    UnsupportedArgument(String),

    /// A series or quadrature could not meet the requested precision
    /// within its configured caps.
    #[error("cannot reach requested precision: {0}")]
    PrecisionUnachievable(String),

    /// An argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
