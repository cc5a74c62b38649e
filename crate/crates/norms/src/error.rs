use thiserror::Error;

#[derive(Debug, Error)]
pub enum NormError {
    #[error(transparent)]
    Localization(#[from] nsc_localization::LocalizationError),
}

pub type Result<T> = std::result::Result<T, NormError>;
