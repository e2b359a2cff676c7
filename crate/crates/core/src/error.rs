use thiserror::Error;

/// Errors raised by the toolkit's operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A hypergraph could not be constructed from the given data.
    #[error("invalid hypergraph: {0}")]
    InvalidGraph(String),
    /// The requested exhaustive computation exceeds the configured cap.
    #[error("{0}")]
    Infeasible(String),
    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
