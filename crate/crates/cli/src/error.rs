use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad descriptor, flag or expression. Exit code 2.
    #[error("{0}")]
    Invalid(String),
    /// Evaluation failed on valid input. Exit code 3.
    #[error("{0}")]
    Runtime(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn invalid(field: &str, message: impl std::fmt::Display) -> Self {
        CliError::Invalid(format!("{field}: {message}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Runtime(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<rdtm_core::EvalError> for CliError {
    fn from(e: rdtm_core::EvalError) -> Self {
        CliError::Runtime(format!("evaluation failed: {e}"))
    }
}

impl From<rdtm_core::verify::VerifyError> for CliError {
    fn from(e: rdtm_core::verify::VerifyError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<rdtm_core::EngineError> for CliError {
    fn from(e: rdtm_core::EngineError) -> Self {
        CliError::Runtime(e.to_string())
    }
}
