use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failure of a subcommand, mapped to the process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed container: {0}")]
    Format(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        CliError::Format(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Format(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Verification(_) => 5,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
