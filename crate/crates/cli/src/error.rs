use std::path::PathBuf;

use qcar_core::{AnalysisError, SimError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}{message}", key.as_ref().map(|k| format!("config key `{k}`: ")).unwrap_or_default())]
    Parse { key: Option<String>, message: String },
    #[error("`{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{failed} of {total} grid cells failed")]
    PartialGrid { failed: usize, total: usize },
}

impl CliError {
    /// 1 for bad input, 2 for numerical failure, 3 when some grid cells failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Sim(SimError::NumericalBlowup { .. } | SimError::InvariantViolation { .. }) => 2,
            CliError::PartialGrid { .. } => 3,
            _ => 1,
        }
    }
}
