//! Weighted localization norms `B`, `X`, `D` and axisymmetry diagnostics.

pub mod error;
pub mod norms;
pub mod report;

pub use error::{NormError, Result};
pub use norms::{
    axisymmetry_residual, b_norm, d_norm, initial_data_norm, x_norm, DNorm, NormContext, DEFAULT_BETA,
    DEFAULT_SOBOLEV_INDEX, D_NORM_B_ITERATES, D_NORM_X_ITERATES,
};
pub use report::{NormEntry, NormReport};

/// Norm reports are always produced in double precision.
pub type Report = NormReport;
