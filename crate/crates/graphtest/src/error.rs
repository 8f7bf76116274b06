use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] graphtest_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Write(#[from] io::Error),
}

impl HarnessError {
    /// 2 for bad arguments or configuration, 3 for everything that fails a
    /// precondition at run time.
    pub fn exit_code(&self) -> i32 {
        use graphtest_core::Error as E;
        match self {
            HarnessError::Config(_) | HarnessError::Json(_) => 2,
            HarnessError::Core(E::InvalidParameter { .. } | E::EpsilonOutOfRange { .. }) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
