use thiserror::Error;

/// Errors raised by constructors and verifiers.
///
/// Verifiers that answer a yes/no question return a verdict value instead of
/// an error; `Error` is reserved for malformed input, violated preconditions,
/// and internal inconsistencies.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("connection set contains the identity")]
    IdentityInConnectionSet,

    #[error("connection set is not inverse-closed: {element} is present but its inverse {inverse} is not")]
    NotInverseClosed { element: usize, inverse: usize },

    #[error("graph is disconnected: vertex {unreachable} is unreachable from {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("size guard exceeded: {0}")]
    TooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
