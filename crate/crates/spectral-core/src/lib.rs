//! Periodic pseudo-spectral grid for the rotating Navier–Stokes simulator.
//!
//! Fields are Fourier coefficient arrays on an `n^3` grid over the centered box
//! `[-πL, πL)^3`. The zero mode and the Nyquist rows are kept at zero by every
//! operation that produces a dynamical field.

pub mod calculus;
pub mod checkpoint;
pub mod error;
pub mod field;
pub mod grid;
pub mod samples;
mod scalar;
pub mod vector_fields;

pub use calculus::{
    coriolis, curl, divergence, divergence_residual, gradient, gradient_sup_norm, homogeneous_sobolev_norm,
    horizontal_norm, laplacian, leray_project, norm3, partial, sobolev_norm, vector_gradient_norm, vector_laplacian,
    vector_sobolev_norm,
};
pub use checkpoint::Checkpoint;
pub use error::{Result, SpectralError};
pub use field::{
    czero, vector_inner, vector_l2_norm, vector_map, vector_zeros, vector_zip, SpectralField, VectorField,
    VelocityState,
};
pub use grid::{make_grid, Grid};
pub use scalar::Real;
pub use vector_fields::{
    omega_scalar, omega_vector, outer_mass_fraction, s_scalar, s_scalar_power, s_vector, s_vector_power,
    OmegaConvention, Windowed, OUTER_MASS_LIMIT,
};

/// Double precision grid, the default for every experiment.
pub type Grid64 = Grid<f64>;
/// Double precision spectral field.
pub type Field = SpectralField<f64>;
/// Single precision spectral field.
pub type Field32 = SpectralField<f32>;
/// Double precision velocity.
pub type Velocity = VelocityState<f64>;
