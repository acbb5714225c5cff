use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed class: {0}")]
    ClassFormat(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(lol_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<lol_core::Error> for HarnessError {
    fn from(e: lol_core::Error) -> Self {
        match e {
            lol_core::Error::BudgetExceeded(msg) => HarnessError::Budget(msg),
            other => HarnessError::Core(other),
        }
    }
}

impl HarnessError {
    /// Process exit code: 1 for usage and input problems, 3 for budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Budget(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

pub fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}
