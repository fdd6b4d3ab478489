use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero vector has no norming functional")]
    ZeroVector,

    #[error("zero operator: {0}")]
    ZeroOperator(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("precondition not established: {0}")]
    PreconditionNotEstablished(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("analytic and numeric verdicts disagree: {0}")]
    Inconsistent(String),

    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
