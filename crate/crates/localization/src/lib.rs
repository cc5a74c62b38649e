//! Frequency localizations: dyadic shells `P_k`, anisotropic cells `P_{k,p}` and
//! `P_{k,p,q}` measuring `√(1-Λ²)` and `Λ = ξ_3/|ξ|`, and the angular
//! projectors `R̄_{≤l}`, `R̄_l`, `R_l`.

pub mod angular;
pub mod bump;
pub mod cells;
pub mod error;
pub mod legendre;

pub use angular::{AngularBasis, Variant};
pub use bump::{dyadic, dyadic_cap, psi, varphi};
pub use cells::{
    anisotropy, apply_pk, apply_pkp, apply_pkpq, shell_range, shell_weight, shells_at, CellIndex, Level, Partition,
    DEFAULT_FLOOR, P_FLOOR, Q_FLOOR,
};
pub use error::{LocalizationError, Result};
pub use legendre::{legendre, legendre_zonal};

/// Double precision field, the usual input of every localization.
pub use nsc_spectral::Field;
