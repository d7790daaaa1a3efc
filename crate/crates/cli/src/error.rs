use std::path::PathBuf;

use thiserror::Error;

/// Failures of a `dualsurf` invocation, each tied to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Curve(#[from] dualsurf::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Curve(_) => exit::INVALID,
            CliError::Io { .. } => exit::IO,
        }
    }
}

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const IO: i32 = 3;
}
