use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input (bad clustering, unknown vertex, loop edge, ...).
    #[error("validation error: {0}")]
    Validation(String),
    /// An operation that requires a planar input got a non-planar one.
    #[error("graph is not planar")]
    NotPlanar,
    /// The requested construction does not exist for these parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// An exhaustive search hit its configuration budget before deciding.
    #[error("search budget exhausted after {0} configurations")]
    Exhausted(u64),
    /// A witness was requested for an assignment that does not satisfy the formula.
    #[error("assignment does not satisfy the formula")]
    Unsatisfied,
    /// Text format parse failure, with 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
