//! The linear flow `e^{±itΛ - κt|ξ|^2}` and sup-norm decay experiments.

pub mod decay;
pub mod error;
pub mod linear;

pub use decay::{
    d_norm_bound, fit_slope, log_times, measure_decay, whole_field_bound, DecayMeasurement, DecaySample, Localization,
};
pub use error::{PropagatorError, Result};
pub use linear::{evolve_linear, heat_factor};
pub use nsc_unknowns::Sign;

/// Double precision measurement, the only one the experiments produce.
pub type Measurement = DecayMeasurement;
