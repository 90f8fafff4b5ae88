use thiserror::Error;

/// Errors raised across the crate.
///
/// `Usage` covers malformed inputs (bad indices, ragged matrices, wrong
/// file contents). `Domain` covers parameters outside the range where an
/// operation is mathematically defined.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance too large: {what} is {actual}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("coordinate {stuck} cannot be repaired within locality {cap}; still failed: {residual:?}")]
    Unrepairable {
        stuck: usize,
        cap: usize,
        residual: Vec<usize>,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
