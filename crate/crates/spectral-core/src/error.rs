use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("field does not live on this grid (n = {expected}, got {found})")]
    GridMismatch { expected: usize, found: usize },
    #[error("coefficient buffer has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("checkpoint format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
