use std::path::PathBuf;

use thiserror::Error;

use nsc_solver::SolverError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, configuration or input files.
    #[error("{0}")]
    Validation(String),
    /// The integration produced non-finite values.
    #[error("{message}")]
    Numerical { message: String, checkpoint: Option<PathBuf> },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical { .. } => 2,
            _ => 1,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::NonFinite { ref checkpoint, .. } => {
                CliError::Numerical { message: e.to_string(), checkpoint: checkpoint.clone() }
            }
            SolverError::Io(io) => CliError::Io(io),
            other => CliError::Validation(other.to_string()),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        })*
    };
}

validation_from!(
    nsc_spectral::SpectralError,
    nsc_norms::NormError,
    nsc_propagator::PropagatorError,
    nsc_resonance::ResonanceError,
    nsc_energy::EnergyError,
    serde_json::Error
);

pub type Result<T> = std::result::Result<T, CliError>;
