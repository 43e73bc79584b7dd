use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error{}: {message}", key_suffix(.key))]
    Config { key: String, message: String },

    #[error(transparent)]
    Core(#[from] latticesum::Error),

    #[error("{what} produced a non-finite value")]
    NonFinite { what: String },

    #[error("cannot read {}: {source}", .path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", .path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

fn key_suffix(key: &str) -> String {
    if key.is_empty() {
        String::new()
    } else {
        format!(" at `{key}`")
    }
}

impl CliError {
    /// Process exit status: 2 for configuration and numerical errors, 3 for
    /// I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Core(_) | CliError::NonFinite { .. } => 2,
            CliError::Read { .. } | CliError::Write { .. } => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
