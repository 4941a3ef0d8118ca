use thiserror::Error;

pub type Result<T, E = PlabError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum PlabError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed permutation string {input:?}: {reason}")]
    MalformedPermutation { input: String, reason: String },

    #[error("permutation {0} is not connected")]
    Disconnected(String),

    #[error("vertex budget of {limit} collections exceeded")]
    BudgetExceeded { limit: usize },

    #[error("brute-force oracle unavailable: {0}")]
    OracleUnavailable(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl PlabError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        PlabError::InvalidInput(msg.into())
    }
}
