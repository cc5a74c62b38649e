//! Phase function of the three-wave interaction, its derivatives, the
//! multiplier algebra, and numerical checks of the non-degeneracy and index
//! geometry statements.

pub mod bilinear;
pub mod error;
pub mod geometry;
pub mod multiplier;
pub mod sweep;
pub mod symbols;

pub use bilinear::{
    q_m_direct, resolved_cells, set_size, set_size_study, SetSizeReport, SetSizeTrial, DIRECT_SUM_MAX_N,
};
pub use error::{ResonanceError, Result};
pub use geometry::{
    clauses, conclusion, geometry_sweep, hypothesis, index_geometry, indices, one_small_case, Counterexample,
    GeometryLemma, Indices, PredicateReport,
};
pub use multiplier::{
    normal_form_denominator, polarized_denominator, res_nr_split, Factor, MultiplierSpec, PhaseCut, Zeta,
};
pub use nsc_unknowns::Sign;
pub use sweep::{
    positivity_sweep, random_signs, random_vector, relative_spread, sample_rng, sweep_with, SweepConfig, SweepReport,
};
pub use symbols::{
    grad_eta_phi, grad_lambda, lambda, nearest_cell, phase_derivatives, phi, sigma_bar, PhaseDerivatives, Signs,
    SymbolSample, Vec3,
};

pub type Sample = SymbolSample;
pub type Derivatives = PhaseDerivatives<f64>;
