use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed drawing: {0}")]
    Malformed(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("instance exceeds limits: {0}")]
    LimitExceeded(String),
    #[error("construction produced an invalid drawing: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
