//! Integrating-factor RK4 on the profiles `𝒰±`.
//!
//! The heat factor `e^{-κτ|ξ|²}` is applied exactly. The dispersive phase
//! lives in the nonlinear term: profiles are wound back to `U±` at the stage
//! time, the velocity is rebuilt, `N± = N_A ± N_C` is formed from dealiased
//! products and rewound by `e^{∓itΛ}`.

use num_complex::Complex;
use rayon::prelude::*;

use nsc_propagator::heat_factor;
use nsc_spectral::{Real, SpectralField, VectorField};
use nsc_unknowns::{
    dealiased_products, nonlinearity_from_products, profiles_to_velocity, wind_profile, Direction, Products,
    ProfilePair, Sign,
};

use crate::error::{Result, SolverError};
use crate::init::truncate_to_ball;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOptions {
    /// Evaluate the quadratic term; off gives the exact linear semigroup.
    pub nonlinear: bool,
    /// Two-thirds rule on every product, with outputs kept in the inscribed ball.
    pub dealias: bool,
}

impl Default for StepOptions {
    fn default() -> Self {
        Self { nonlinear: true, dealias: true }
    }
}

/// Nonlinear forcing of the profile equation at one time.
#[derive(Clone, Debug)]
pub struct Forcing<T: Real> {
    pub plus: SpectralField<T>,
    pub minus: SpectralField<T>,
    /// `L²` norm of the forcing on `ξ_h = 0`, which the `(A, C)` variables drop.
    pub axis_norm: f64,
}

/// Products without the two-thirds rule (Nyquist rows still cleared).
fn raw_products<T: Real>(u: &VectorField<T>) -> Products<T> {
    let grid = u[0].grid();
    let phys: Vec<Vec<Complex<T>>> = u.par_iter().map(|c| c.to_physical()).collect();
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let t: Vec<SpectralField<T>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let prod = phys[a].iter().zip(&phys[b]).map(|(x, y)| *x * *y).collect();
            let mut f = SpectralField::from_physical(grid, prod);
            f.zero_nyquist();
            f
        })
        .collect();
    Products { t: t.try_into().unwrap_or_else(|_| unreachable!()) }
}

/// Dealiased products cut back to the ball `|j| ≤ K` inscribed in the
/// two-thirds cube. The cube clips lattice circles `|j_h| = const` unevenly;
/// the ball keeps each one whole, so axisymmetry survives the truncation.
fn ball_products<T: Real>(u: &VectorField<T>) -> Products<T> {
    let mut p = dealiased_products(u);
    for f in p.t.iter_mut() {
        truncate_to_ball(f);
    }
    p
}

/// `‖ℙ div(u⊗u)‖` restricted to the vertical axis: there `ℙ` keeps the
/// horizontal part `iξ_3 T_{a3}`.
fn axis_forcing<T: Real>(p: &Products<T>) -> f64 {
    let grid = p.t[0].grid();
    let n = grid.n();
    let mut acc = 0.0;
    for i2 in 0..n {
        let idx = grid.index(0, 0, i2);
        if grid.is_nyquist(idx) {
            continue;
        }
        let xi3 = grid.wavevector(idx)[2].to64();
        for a in 0..2 {
            acc += xi3 * xi3 * p.get(a, 2).coeffs()[idx].norm_sqr().to64();
        }
    }
    (acc * grid.volume().to64()).sqrt()
}

/// `e^{∓itΛ}(N_A ± N_C)` for the profiles at their own time.
pub fn profile_forcing<T: Real>(profiles: &ProfilePair<T>, opts: StepOptions) -> Forcing<T> {
    let grid = profiles.u_plus.grid();
    if !opts.nonlinear {
        return Forcing { plus: SpectralField::zeros(grid), minus: SpectralField::zeros(grid), axis_norm: 0.0 };
    }
    let u = profiles_to_velocity(profiles).u;
    let products = if opts.dealias { ball_products(&u) } else { raw_products(&u) };
    let axis_norm = axis_forcing(&products);
    let (na, nc) = nonlinearity_from_products(&products);
    let t = profiles.t;
    Forcing {
        plus: wind_profile(&na.add(&nc), t, Sign::Plus, Direction::ToProfile),
        minus: wind_profile(&na.sub(&nc), t, Sign::Minus, Direction::ToProfile),
        axis_norm,
    }
}

fn heat<T: Real>(f: &SpectralField<T>, tau: T, kappa: T) -> SpectralField<T> {
    if kappa == T::zero() {
        return f.clone();
    }
    f.apply_real_multiplier(|xi| heat_factor(xi, tau, kappa))
}

/// `κ|ξ|² f`.
pub fn heat_generator<T: Real>(f: &SpectralField<T>, kappa: T) -> SpectralField<T> {
    f.apply_real_multiplier(|xi| kappa * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]))
}

/// Outcome of one step.
#[derive(Clone, Debug)]
pub struct Step<T: Real> {
    pub state: ProfilePair<T>,
    /// Axis forcing norm at the start of the step.
    pub axis_norm: f64,
}

fn pair<T: Real>(plus: SpectralField<T>, minus: SpectralField<T>, t: T, kappa: T) -> ProfilePair<T> {
    ProfilePair { u_plus: plus, u_minus: minus, t, kappa }
}

/// One Lawson RK4 step of size `dt` (negative steps run backwards).
pub fn step<T: Real>(state: &ProfilePair<T>, dt: T, opts: StepOptions) -> Result<Step<T>> {
    let (t, kappa) = (state.t, state.kappa);
    let half = dt * T::lit(0.5);
    let e_half = |f: &SpectralField<T>| heat(f, half, kappa);
    let e_full = |f: &SpectralField<T>| heat(f, dt, kappa);
    let comps = |p: &ProfilePair<T>| [p.u_plus.clone(), p.u_minus.clone()];
    let u0 = comps(state);

    let k1 = profile_forcing(state, opts);
    let k1f = [k1.plus.clone(), k1.minus.clone()];
    let s2: Vec<SpectralField<T>> = (0..2).map(|i| e_half(&u0[i].axpy(half, &k1f[i]))).collect();
    let k2 = profile_forcing(&pair(s2[0].clone(), s2[1].clone(), t + half, kappa), opts);
    let k2f = [k2.plus, k2.minus];
    let u0_half: Vec<SpectralField<T>> = u0.iter().map(|f| e_half(f)).collect();
    let s3: Vec<SpectralField<T>> = (0..2).map(|i| u0_half[i].axpy(half, &k2f[i])).collect();
    let k3 = profile_forcing(&pair(s3[0].clone(), s3[1].clone(), t + half, kappa), opts);
    let k3f = [k3.plus, k3.minus];
    let u0_full: Vec<SpectralField<T>> = u0.iter().map(|f| e_full(f)).collect();
    let s4: Vec<SpectralField<T>> = (0..2).map(|i| u0_full[i].axpy(dt, &e_half(&k3f[i]))).collect();
    let k4 = profile_forcing(&pair(s4[0].clone(), s4[1].clone(), t + dt, kappa), opts);
    let k4f = [k4.plus, k4.minus];

    let sixth = dt / T::lit(6.0);
    let next: Vec<SpectralField<T>> = (0..2)
        .map(|i| {
            let mid = e_half(&k2f[i].add(&k3f[i])).scale(T::lit(2.0));
            let incr = e_full(&k1f[i]).add(&mid).add(&k4f[i]);
            u0_full[i].axpy(sixth, &incr)
        })
        .collect();
    let [plus, minus]: [SpectralField<T>; 2] = next.try_into().unwrap_or_else(|_| unreachable!());
    if !(plus.is_finite() && minus.is_finite()) {
        return Err(SolverError::NonFinite { t: (t + dt).to64(), last_good: t.to64(), checkpoint: None });
    }
    Ok(Step { state: pair(plus, minus, t + dt, kappa), axis_norm: k1.axis_norm })
}

/// Advances `steps` steps of size `dt`.
pub fn advance<T: Real>(state: &ProfilePair<T>, dt: T, steps: usize, opts: StepOptions) -> Result<ProfilePair<T>> {
    let mut s = state.clone();
    for _ in 0..steps {
        s = step(&s, dt, opts)?.state;
    }
    Ok(s)
}

/// `‖one step of dt − two steps of dt/2‖ / ‖state‖`: the local error estimate.
pub fn step_doubling_error<T: Real>(state: &ProfilePair<T>, dt: T, opts: StepOptions) -> Result<f64> {
    let one = step(state, dt, opts)?.state;
    let two = advance(state, dt * T::lit(0.5), 2, opts)?;
    let diff = |a: &SpectralField<T>, b: &SpectralField<T>| a.sub(b).l2_norm().to64().powi(2);
    let num = (diff(&one.u_plus, &two.u_plus) + diff(&one.u_minus, &two.u_minus)).sqrt();
    let den = (state.u_plus.l2_norm().to64().powi(2) + state.u_minus.l2_norm().to64().powi(2)).sqrt();
    Ok(if den == 0.0 { num } else { num / den })
}

/// Zero profiles on the grid of `like`.
pub fn zero_profiles<T: Real>(like: &SpectralField<T>, t: T, kappa: T) -> ProfilePair<T> {
    pair(SpectralField::zeros(like.grid()), SpectralField::zeros(like.grid()), t, kappa)
}
