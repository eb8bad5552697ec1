use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Input could not be parsed or is structurally malformed.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// An exhaustive routine would exceed its configured size limit.
    #[error("resource cap exceeded: {what} ({got} > {limit})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    /// A search finished without finding the requested object.
    #[error("search exhausted: {0}")]
    Exhausted(String),
    /// An internal consistency check failed. Always a bug or a false precondition.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn cap(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::CapExceeded { what, limit, got })
    } else {
        Ok(())
    }
}
