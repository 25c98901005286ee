use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A configured size limit would be exceeded.
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Two independent computations of the same quantity disagree.
    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
