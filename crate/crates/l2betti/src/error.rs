use l2betti_core::Error as CoreError;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const UNSUPPORTED: u8 = 2;
    pub const VERIFY_FAILED: u8 = 3;
    pub const NOT_CONVERGED: u8 = 4;
    pub const BOUND_UNAVAILABLE: u8 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Unsupported(_)) => exit::UNSUPPORTED,
            CliError::Core(CoreError::BoundUnavailable { .. }) => exit::BOUND_UNAVAILABLE,
            _ => exit::FAILURE,
        }
    }
}
