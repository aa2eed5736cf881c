use thiserror::Error;

/// CLI-level failure, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid configuration or arguments (exit code 2).
    #[error("config error: {0}")]
    Config(String),
    /// Failure while running a pipeline (exit code 1).
    #[error(transparent)]
    Runtime(#[from] spatialgen::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
