use derivring_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("precondition violated: {0}")]
    Precondition(CoreError),
    #[error("{0}")]
    Engine(CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for unreadable input, 3 when the variety violates a precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => 3,
            _ => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UnitIdeal | CoreError::MaximalIdeal | CoreError::NotPrime { .. } => CliError::Precondition(e),
            other => CliError::Engine(other),
        }
    }
}

impl From<crate::parse::ParseError> for CliError {
    fn from(e: crate::parse::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
