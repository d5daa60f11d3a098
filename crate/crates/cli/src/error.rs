use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ordmoment::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Violation = 1,
    Usage = 2,
    Tolerance = 3,
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(ordmoment::Error::Tolerance { .. }) => Exit::Tolerance,
            _ => Exit::Usage,
        }
    }
}
