use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config keys or parameter values.
    #[error("{0}")]
    Usage(String),
    /// A computed check did not meet its tolerance.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<iqconc_core::Error> for CliError {
    fn from(e: iqconc_core::Error) -> Self {
        match e {
            iqconc_core::Error::Numerical(m) => CliError::Verification(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}
