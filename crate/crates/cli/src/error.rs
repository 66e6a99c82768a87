use thiserror::Error;

pub type Result<T, E = IoError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] sumdist_core::Error),
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}
