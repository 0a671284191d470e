use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config is not valid JSON (line {line}, column {column}): {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config: {0}")]
    Validation(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(#[source] stefan_core::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the input, 3 for numerical breakdown.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<stefan_core::Error> for CliError {
    fn from(e: stefan_core::Error) -> Self {
        match e {
            stefan_core::Error::InvalidProblem(msg) => CliError::Validation(msg),
            e @ stefan_core::Error::BelowThreshold { .. } => CliError::Validation(e.to_string()),
            e => CliError::Numerical(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
