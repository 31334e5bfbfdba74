use thiserror::Error;

/// Failures that end a run. Mathematical check failures are not errors; they
/// are reported in the output with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input, unreadable files, or a group over the size cap.
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] hecke_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(hecke_core::Error::Internal(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}
