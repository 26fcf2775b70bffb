use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedType { family: char, rank: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource cap exceeded while computing {what}: {size} > cap {cap}")]
    CapExceeded { what: String, size: u64, cap: u64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
