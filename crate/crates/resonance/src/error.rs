use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResonanceError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("direct bilinear sum refused on n = {n}: it costs n^6 = {cost:.1e} multiplier evaluations (limit n = 16)")]
    GridTooLarge { n: usize, cost: f64 },
    #[error("fields live on different grids")]
    GridMismatch,
}

pub type Result<T> = std::result::Result<T, ResonanceError>;
