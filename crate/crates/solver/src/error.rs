use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("non-finite state at t = {t}; last good state at t = {last_good}")]
    NonFinite { t: f64, last_good: f64, checkpoint: Option<PathBuf> },
    #[error("grid n = {n} is too large for the direct oracle (n <= 16)")]
    GridTooLarge { n: usize },
    #[error(transparent)]
    Spectral(#[from] nsc_spectral::SpectralError),
    #[error(transparent)]
    Norm(#[from] nsc_norms::NormError),
    #[error(transparent)]
    Energy(#[from] nsc_energy::EnergyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SolverError>;
