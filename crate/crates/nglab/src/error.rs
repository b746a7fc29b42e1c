use nglab_core::Error as CoreError;

/// Failures surfaced by the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum NglabError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    /// A checked identity did not hold.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl NglabError {
    /// 2 = failed identity, 3 = invalid input, 4 = budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            NglabError::Core(CoreError::BudgetExceeded { .. }) => 4,
            NglabError::Core(CoreError::InvariantViolation(_)) | NglabError::CheckFailed(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, NglabError>;
