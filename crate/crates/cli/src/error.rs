//! CLI errors and their exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Construction(String),
    #[error("{0}")]
    NoRelation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Json(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Construction(_) => 3,
            CliError::NoRelation(_) => 4,
        }
    }
}

impl From<qonsager::Error> for CliError {
    fn from(e: qonsager::Error) -> Self {
        use qonsager::Error as E;
        match e {
            E::Parse(_)
            | E::InvalidArgument(_)
            | E::InvalidRepresentation(_)
            | E::DimensionMismatch(_)
            | E::AlphabetMismatch(_) => CliError::Usage(e.to_string()),
            E::NoRelation(_) => CliError::NoRelation(e.to_string()),
            _ => CliError::Construction(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
