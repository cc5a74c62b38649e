use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocalizationError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("field is not axisymmetric on the shell |j|^2 = {shell}: azimuthal variance {variance:.3e} exceeds {tolerance:.3e}")]
    NotAxisymmetric { shell: i64, variance: f64, tolerance: f64 },
    #[error("angular basis was built for n = {expected}, field has n = {found}")]
    GridMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, LocalizationError>;
