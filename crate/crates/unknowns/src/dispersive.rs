//! `u ↔ (A, C) ↔ U± ↔ 𝒰±`.
//!
//! `Â = i(ξ_1 û_2 - ξ_2 û_1)/|ξ_h|` and `Ĉ = (|ξ|/|ξ_h|) û_3`. Both vanish on the
//! vertical axis `ξ_h = 0`, where `|∇_h|^{-1}` is singular.

use num_complex::Complex;

use nsc_spectral::{czero, Real, SpectralField, VectorField, VelocityState};

/// Fraction of velocity `L^2` mass on the vertical axis allowed before warning.
pub const AXIS_MASS_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct DispersivePair<T: Real> {
    pub a: SpectralField<T>,
    pub c: SpectralField<T>,
    pub t: T,
    pub kappa: T,
}

/// Profiles `𝒰± = e^{∓itΛ} U±`.
#[derive(Clone, Debug)]
pub struct ProfilePair<T: Real> {
    pub u_plus: SpectralField<T>,
    pub u_minus: SpectralField<T>,
    pub t: T,
    pub kappa: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `U± → 𝒰±`, multiply by `e^{∓itΛ}`.
    ToProfile,
    /// `𝒰± → U±`, multiply by `e^{±itΛ}`.
    ToUnknown,
}

/// `Λ(ξ) = ξ_3/|ξ|` with `Λ(0) = 0`.
#[inline]
pub fn lambda<T: Real>(xi: [T; 3]) -> T {
    let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    if r == T::zero() {
        T::zero()
    } else {
        xi[2] / r
    }
}

/// Fraction of the velocity's `L^2` mass on the line `ξ_h = 0`.
pub fn axis_mass_fraction<T: Real>(u: &VectorField<T>) -> f64 {
    let grid = u[0].grid();
    let mut axis = 0.0;
    let mut total = 0.0;
    for comp in u.iter() {
        for (idx, c) in comp.coeffs().iter().enumerate() {
            let j = grid.wavenumbers(idx);
            let w = c.norm_sqr().to64();
            total += w;
            if j[0] == 0 && j[1] == 0 {
                axis += w;
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        axis / total
    }
}

pub fn to_dispersive<T: Real>(state: &VelocityState<T>) -> DispersivePair<T> {
    let u = &state.u;
    let fraction = axis_mass_fraction(u);
    if fraction > AXIS_MASS_TOLERANCE {
        log::warn!("{fraction:.3e} of the velocity mass sits on the vertical axis and is dropped by (A, C)");
    }
    let grid = u[0].grid();
    let mut a = SpectralField::zeros(grid);
    let mut c = SpectralField::zeros(grid);
    {
        let (ac, cc) = (a.coeffs_mut(), c.coeffs_mut());
        for idx in 0..grid.len() {
            if grid.is_nyquist(idx) {
                continue;
            }
            let xi = grid.wavevector(idx);
            let h = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
            if h == T::zero() {
                continue;
            }
            let r = (h * h + xi[2] * xi[2]).sqrt();
            let (u1, u2, u3) = (u[0].coeffs()[idx], u[1].coeffs()[idx], u[2].coeffs()[idx]);
            ac[idx] = (u2 * xi[0] - u1 * xi[1]) * Complex::new(T::zero(), T::one() / h);
            cc[idx] = u3 * (r / h);
        }
    }
    DispersivePair { a, c, t: state.t, kappa: state.kappa }
}

/// Inverse of [`to_dispersive`]: `û_3 = (|ξ_h|/|ξ|) Ĉ` and
/// `û_h = -(ξ_3 û_3/|ξ_h|^2) ξ_h - (i Â/|ξ_h|) ξ_h^⊥` with `ξ_h^⊥ = (-ξ_2, ξ_1)`.
pub fn from_dispersive<T: Real>(pair: &DispersivePair<T>) -> VelocityState<T> {
    let grid = pair.a.grid();
    let mut u = nsc_spectral::vector_zeros(grid);
    for idx in 0..grid.len() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let xi = grid.wavevector(idx);
        let h2 = xi[0] * xi[0] + xi[1] * xi[1];
        if h2 == T::zero() {
            continue;
        }
        let h = h2.sqrt();
        let r = (h2 + xi[2] * xi[2]).sqrt();
        let u3 = pair.c.coeffs()[idx] * (h / r);
        let alpha = u3 * (-xi[2] / h2);
        let beta = pair.a.coeffs()[idx] * Complex::new(T::zero(), -T::one() / h);
        let u1 = alpha * xi[0] - beta * xi[1];
        let u2 = alpha * xi[1] + beta * xi[0];
        u[0].coeffs_mut()[idx] = u1;
        u[1].coeffs_mut()[idx] = u2;
        u[2].coeffs_mut()[idx] = u3;
    }
    VelocityState::new(u, pair.t, pair.kappa)
}

/// `U± = A ± C`.
pub fn u_pm<T: Real>(pair: &DispersivePair<T>) -> (SpectralField<T>, SpectralField<T>) {
    (pair.a.add(&pair.c), pair.a.sub(&pair.c))
}

/// `A = (U₊ + U₋)/2`, `C = (U₊ - U₋)/2`.
pub fn from_u_pm<T: Real>(plus: &SpectralField<T>, minus: &SpectralField<T>, t: T, kappa: T) -> DispersivePair<T> {
    let half = T::lit(0.5);
    DispersivePair { a: plus.add(minus).scale(half), c: plus.sub(minus).scale(half), t, kappa }
}

/// Multiplies by `e^{∓itΛ}` (to profile) or `e^{±itΛ}` (back).
pub fn wind_profile<T: Real>(f: &SpectralField<T>, t: T, sign: Sign, direction: Direction) -> SpectralField<T> {
    let s = match direction {
        Direction::ToProfile => -sign.value::<T>(),
        Direction::ToUnknown => sign.value::<T>(),
    };
    f.apply_multiplier(|xi| {
        let phase = s * t * lambda(xi);
        Complex::new(phase.cos(), phase.sin())
    })
}

pub fn to_profiles<T: Real>(pair: &DispersivePair<T>) -> ProfilePair<T> {
    let (p, m) = u_pm(pair);
    ProfilePair {
        u_plus: wind_profile(&p, pair.t, Sign::Plus, Direction::ToProfile),
        u_minus: wind_profile(&m, pair.t, Sign::Minus, Direction::ToProfile),
        t: pair.t,
        kappa: pair.kappa,
    }
}

pub fn from_profiles<T: Real>(profiles: &ProfilePair<T>) -> DispersivePair<T> {
    let p = wind_profile(&profiles.u_plus, profiles.t, Sign::Plus, Direction::ToUnknown);
    let m = wind_profile(&profiles.u_minus, profiles.t, Sign::Minus, Direction::ToUnknown);
    from_u_pm(&p, &m, profiles.t, profiles.kappa)
}

pub fn velocity_to_profiles<T: Real>(state: &VelocityState<T>) -> ProfilePair<T> {
    to_profiles(&to_dispersive(state))
}

pub fn profiles_to_velocity<T: Real>(profiles: &ProfilePair<T>) -> VelocityState<T> {
    from_dispersive(&from_profiles(profiles))
}

/// Sign of the `iΛ` coupling in the linear part of the `(A, C)` system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinearCoupling {
    /// `∂_t A = iΛC`, `∂_t C = iΛA`; diagonalized by `U± = A ± C`.
    #[default]
    Diagonalizing,
    /// `∂_t C = iΛC` as typeset; kept for sensitivity runs only.
    AsPrinted,
}

/// Linear right-hand side `(κΔA + iΛC, κΔC + iΛ·(A or C))`.
pub fn linear_rhs<T: Real>(pair: &DispersivePair<T>, coupling: LinearCoupling) -> (SpectralField<T>, SpectralField<T>) {
    let kappa = pair.kappa;
    let heat =
        |f: &SpectralField<T>| f.apply_real_multiplier(|xi| -kappa * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]));
    let rot = |f: &SpectralField<T>| f.apply_multiplier(|xi| Complex::new(T::zero(), lambda(xi)));
    let da = heat(&pair.a).add(&rot(&pair.c));
    let source = match coupling {
        LinearCoupling::Diagonalizing => &pair.a,
        LinearCoupling::AsPrinted => &pair.c,
    };
    let dc = heat(&pair.c).add(&rot(source));
    (da, dc)
}

/// Zeroes `ξ_h = 0` and the Nyquist rows.
pub fn clear_axis<T: Real>(f: &mut SpectralField<T>) {
    let grid = f.grid().clone();
    for (idx, c) in f.coeffs_mut().iter_mut().enumerate() {
        let j = grid.wavenumbers(idx);
        if (j[0] == 0 && j[1] == 0) || grid.is_nyquist(idx) {
            *c = czero();
        }
    }
}
