//! CLI error type. The two variants map onto the tool's exit codes:
//! validation problems (bad manifests, malformed traces, parameter domain
//! errors, analysis failures) exit 1, filesystem problems exit 2.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError::Validation(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io { .. } => 2,
        }
    }
}

impl From<simnoise::Error> for CliError {
    fn from(e: simnoise::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
