//! Exact coefficients of the weighted energy identities for the scaling field,
//! and numerical checks of those identities and of the energy balance of a run.

pub mod balance;
pub mod coeffs;
pub mod error;
pub mod identity;
pub mod poly;
pub mod rational;

pub use balance::{cumulative_integral, energy_balance_report, growth_exponent, BalanceReport, EnergySeries};
pub use coeffs::{
    a_coeff, a_prime_coeff, a_prime_reconciled, c_coeff, cprime_coeff, d_coeff, derive_c, derive_cprime, CoeffTable,
    Family, ADJOINT_SHIFT, MAX_ORDER,
};
pub use error::{EnergyError, Result};
pub use identity::{
    heat_flow_dissipation, verify_cprime_identity, verify_energy_identity, DissipationReport, IdentityReport,
    Weighting, MAX_IDENTITY_ORDER,
};
pub use poly::Poly;
pub use rational::{neg_part, Exact};

/// Exact rationals used by default.
pub type Rational = num_rational::BigRational;
/// Fixed-width alternative, exact for the supported orders.
pub type Rational128 = num_rational::Ratio<i128>;
pub type Table = CoeffTable<Rational>;
