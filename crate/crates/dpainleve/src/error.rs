use std::path::PathBuf;

use dpainleve_core::Error as CoreError;

/// Exit statuses of the `dp1` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const CONVERGENCE: i32 = 4;
    pub const POLE: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Stdout(std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    /// Malformed input file.
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    /// The orbit was written but hit a near-zero divisor.
    #[error("pole encountered at n = {0:?}")]
    Pole(Vec<i64>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::PrecisionTooLow { .. }
                | CoreError::PrecisionMismatch { .. }
                | CoreError::Parse(_)
                | CoreError::InvalidArgument(_)
                | CoreError::InvalidMultipliers(_)
                | CoreError::TableTooShort { .. } => exit::USAGE,
                CoreError::NonConvergence { .. } | CoreError::IllConditioned { .. } => exit::CONVERGENCE,
                _ => exit::DOMAIN,
            },
            CliError::Usage(_) => exit::USAGE,
            CliError::Pole(_) => exit::POLE,
            CliError::Io { .. } | CliError::Stdout(_) | CliError::Csv(_) | CliError::Json(_) | CliError::Format(_) => {
                exit::IO
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
