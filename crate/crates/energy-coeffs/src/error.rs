use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnergyError {
    #[error("index out of range: {0}")]
    Domain(String),
    #[error("time series is unusable: {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, EnergyError>;
