use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("capacity: {0}")]
    Capacity(ghz_erasure_core::Error),
    #[error("simulation: {0}")]
    Simulation(ghz_erasure_core::Error),
    #[error("reading config {path}: {source}")]
    ConfigRead { path: PathBuf, source: io::Error },
    #[error("parsing config {path}: {source}")]
    ConfigParse { path: PathBuf, source: toml::de::Error },
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
    #[error("encoding json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("encoding csv: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::ConfigParse { .. } => exit::USAGE,
            HarnessError::Capacity(_) => exit::CAPACITY,
            HarnessError::Simulation(_) => exit::FAIL,
            HarnessError::ConfigRead { .. }
            | HarnessError::Io(_)
            | HarnessError::Json(_)
            | HarnessError::Csv(_) => exit::IO,
        }
    }
}

impl From<ghz_erasure_core::Error> for HarnessError {
    fn from(e: ghz_erasure_core::Error) -> Self {
        use ghz_erasure_core::Error as E;
        match e {
            E::Capacity { .. } => HarnessError::Capacity(e),
            E::InvalidLayout { .. }
            | E::InvalidFlags { .. }
            | E::DuplicateBlock { .. }
            | E::BudgetExceeded { .. } => HarnessError::Usage(e.to_string()),
            other => HarnessError::Simulation(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
