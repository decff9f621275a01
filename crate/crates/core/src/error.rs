use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{op}: universe of size {n} exceeds the limit {limit}")]
    SizeLimit { op: &'static str, n: usize, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid {what}: {clause}")]
    Invalid { what: &'static str, clause: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn invalid(what: &'static str, clause: impl Into<String>) -> Self {
        Error::Invalid { what, clause: clause.into() }
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns a size-limit error when `n > limit`.
pub fn check_limit(op: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeLimit { op, n, limit })
    } else {
        Ok(())
    }
}
