use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed arguments or documents.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that the computation rejects.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

pub fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

pub type Result<T> = std::result::Result<T, CliError>;
