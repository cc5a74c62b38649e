//! Dispersive unknowns of the rotating flow.
//!
//! The linearized Coriolis operator is diagonal in `U± = A ± C`, where
//! `A = |∇_h|^{-1} curl_h u` and `C = |∇||∇_h|^{-1} u_3`; the profiles
//! `𝒰± = e^{∓itΛ} U±` remove the oscillation `Λ(ξ) = ξ_3/|ξ|`.

pub mod dispersive;
pub mod nonlinearity;

pub use dispersive::{
    axis_mass_fraction, clear_axis, from_dispersive, from_profiles, from_u_pm, lambda, linear_rhs,
    profiles_to_velocity, to_dispersive, to_profiles, u_pm, velocity_to_profiles, wind_profile, Direction,
    DispersivePair, LinearCoupling, ProfilePair, Sign, AXIS_MASS_TOLERANCE,
};
pub use nonlinearity::{
    convective_from_products, convective_term, dealiased_products, nonlinearity_ac, nonlinearity_from_products,
    nonlinearity_from_velocity, nonlinearity_pm, Products,
};

pub type Pair = DispersivePair<f64>;
pub type Profiles = ProfilePair<f64>;
