//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of bounds (len {len})")]
    OutOfBounds { index: usize, len: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("corrupt data: {0}")]
    Corrupt(String),
    #[error("unknown symbol {0:#04x}")]
    UnknownSymbol(u8),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn corrupt(msg: impl Into<String>) -> Self {
        Error::Corrupt(msg.into())
    }
}
