use thiserror::Error;

#[derive(Debug, Error)]
pub enum PropagatorError {
    #[error("cell {0} carries no mass")]
    EmptyCell(String),
    #[error("bad sample times: {0}")]
    Times(String),
    #[error("too few samples in the fit window ({found}, need 2)")]
    FitWindow { found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PropagatorError>;
