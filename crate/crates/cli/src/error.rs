use std::path::Path;

use serde_json::json;

/// Process exit codes. Clap's own usage errors keep code 2.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const BAD_INPUT: i32 = 3;
    pub const IO: i32 = 4;
    pub const BUDGET: i32 = 5;
    pub const COMPUTE: i32 = 6;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    BadInput(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] falconer_core::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn bad_input(msg: impl Into<String>) -> Self {
        CliError::BadInput(msg.into())
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.code() {
            exit::USAGE => "usage",
            exit::BAD_INPUT => "bad_input",
            exit::IO => "io",
            exit::BUDGET => "budget_exceeded",
            _ => "compute",
        }
    }

    pub fn code(&self) -> i32 {
        use falconer_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::BadInput(_) => exit::BAD_INPUT,
            CliError::Io { .. } => exit::IO,
            CliError::Core(E::BudgetExceeded { .. }) => exit::BUDGET,
            CliError::Core(e) if e.is_input_error() => exit::BAD_INPUT,
            CliError::Core(E::GridTooCoarse(_)) => exit::BAD_INPUT,
            CliError::Core(_) => exit::COMPUTE,
        }
    }

    /// Single-line JSON error record for stderr.
    pub fn record(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "code": self.code(),
                "message": self.to_string(),
            }
        })
        .to_string()
    }
}
