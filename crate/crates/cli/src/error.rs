use std::path::Path;

use thiserror::Error;

/// Failures of a CLI invocation, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("input error: {0}")]
    Input(String),

    /// Parameters or data rejected by the library.
    #[error(transparent)]
    Library(#[from] groupent::Error),

    /// Well-formed input that violates a precondition of the command.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Library(_) | CliError::Precondition(_) => 3,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Input(format!("{}: {err}", path.display()))
    }

    /// Syntax errors are input errors; well-formed JSON with invalid values
    /// is a precondition failure.
    pub fn json(what: &str, err: serde_json::Error) -> Self {
        match err.classify() {
            serde_json::error::Category::Data => CliError::Precondition(format!("{what}: {err}")),
            _ => CliError::Input(format!("{what}: {err}")),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
