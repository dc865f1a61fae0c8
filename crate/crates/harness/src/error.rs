use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] csplab_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// 2 for capacity and space-budget failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(csplab_core::Error::Capacity { .. })
            | Error::Core(csplab_core::Error::BudgetExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
