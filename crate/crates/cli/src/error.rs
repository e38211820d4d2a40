use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed flags or arguments; exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] szf_core::Error),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => e.kind(),
            CliError::Input(_) => "invalid_input",
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}

pub type CliResult<T> = Result<T, CliError>;
