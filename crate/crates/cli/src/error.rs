use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] efrac_core::Error),
    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error("config: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 success, 1 usage or structural error, 2 resource-budget error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(efrac_core::Error::Resource { .. })
            | CliError::Core(efrac_core::Error::CapExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
