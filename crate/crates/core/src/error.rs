use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A bitset, level cap or enumeration bound is too small for the request.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The cooperative time budget ran out; the payload describes how far we got.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
