//! Paired runs at several viscosities from the same data.
//!
//! For `κ_a < κ_b` with `v = u_b - u_a`, the energy method gives
//! `d‖v‖² ≤ 2‖∇u_a‖_∞‖v‖² + (κ_b-κ_a)‖∇u_a‖²/2`, so Gronwall bounds `‖v(t)‖²`
//! by `|Δκ|∫_0^t ‖u_a‖²_{Ḣ¹} exp(2∫_s^t ‖∇u_a‖_∞) ds` with a factor two to spare.
//! Every factor is measured from the run with the smaller viscosity.

use rayon::prelude::*;
use serde::Serialize;

use nsc_energy::cumulative_integral;
use nsc_propagator::fit_slope;
use nsc_spectral::{gradient_sup_norm, make_grid, vector_zip, VelocityState};
use nsc_unknowns::{profiles_to_velocity, velocity_to_profiles, ProfilePair};

use crate::config::SimConfig;
use crate::diagnostics::{h1_sq, l2_sq};
use crate::error::{Result, SolverError};
use crate::init::init_axisymmetric;
use crate::run::resolve_dt;
use crate::stepper::{step, StepOptions};

/// Largest viscosity the experiment accepts.
pub const MAX_KAPPA: f64 = 0.1;
/// Relative slack allowed on the Gronwall bound for time discretization.
pub const GRONWALL_ALLOWANCE: f64 = 0.05;
/// Fits in `t` use samples with `t ≥` this.
pub const FIT_T_MIN: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairHistory {
    pub kappa_low: f64,
    pub kappa_high: f64,
    /// `‖u_high(t) - u_low(t)‖²` at every step.
    pub difference: Vec<f64>,
    /// Gronwall right-hand side from the low-viscosity run.
    pub gronwall: Vec<f64>,
    /// Largest `difference / gronwall` over `t > 0`.
    pub max_ratio: f64,
    /// Slope of `log difference` against `log t` over `t ∈ [1, t_end]`.
    pub time_exponent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub kappas: Vec<f64>,
    pub dt: f64,
    pub times: Vec<f64>,
    pub pairs: Vec<PairHistory>,
    /// `(t, slope of log difference against log |Δκ|)` at the diagnostic times.
    pub kappa_exponents: Vec<(f64, f64)>,
    /// The same slope at `t_end`.
    pub kappa_exponent: Option<f64>,
    pub max_time_exponent: Option<f64>,
    pub gronwall_holds: bool,
}

struct Track {
    h1: Vec<f64>,
    grad_sup: Vec<f64>,
}

fn gronwall_rhs(times: &[f64], dk: f64, h1: &[f64], grad_sup: &[f64]) -> Result<Vec<f64>> {
    let g = cumulative_integral(times, grad_sup)?;
    let w: Vec<f64> = (0..times.len()).map(|i| dk * h1[i] * (-2.0 * g[i]).exp()).collect();
    let wi = cumulative_integral(times, &w)?;
    Ok((0..times.len()).map(|i| (2.0 * g[i]).exp() * wi[i]).collect())
}

pub fn inviscid_limit_experiment(config: &SimConfig, kappas: &[f64]) -> Result<ConvergenceReport> {
    config.validate()?;
    if kappas.len() < 2 {
        return Err(SolverError::Config("need at least two viscosities".into()));
    }
    if kappas.iter().any(|k| !(0.0..=MAX_KAPPA).contains(k)) {
        return Err(SolverError::Config(format!("every kappa must lie in [0, {MAX_KAPPA}]")));
    }
    let grid = make_grid(config.n, config.box_scale)?;
    let init = init_axisymmetric(&config.init, config.epsilon, &grid, config.seed, config.dealias, 0.0)?;
    let (dt, steps) = resolve_dt(config.dt, &init.u, config.t_end);
    let opts = StepOptions { nonlinear: true, dealias: config.dealias };

    let mut runs: Vec<ProfilePair<f64>> =
        kappas.iter().map(|&k| velocity_to_profiles(&VelocityState::new(init.u.clone(), 0.0, k))).collect();
    let mut tracks: Vec<Track> = kappas.iter().map(|_| Track { h1: Vec::new(), grad_sup: Vec::new() }).collect();
    let mut index_pairs = Vec::new();
    for i in 0..kappas.len() {
        for j in i + 1..kappas.len() {
            let (lo, hi) = if kappas[i] <= kappas[j] { (i, j) } else { (j, i) };
            index_pairs.push((lo, hi));
        }
    }
    let mut differences: Vec<Vec<f64>> = vec![Vec::new(); index_pairs.len()];
    let mut times = Vec::with_capacity(steps + 1);

    for n in 0..=steps {
        times.push(dt * n as f64);
        let velocities: Vec<_> = runs.par_iter().map(|p| profiles_to_velocity(p).u).collect();
        let measured: Vec<(f64, f64)> = velocities.par_iter().map(|u| (h1_sq(u), gradient_sup_norm(u))).collect();
        for (track, (h, g)) in tracks.iter_mut().zip(measured) {
            track.h1.push(h);
            track.grad_sup.push(g);
        }
        for (slot, &(lo, hi)) in index_pairs.iter().enumerate() {
            let v = vector_zip(&velocities[hi], &velocities[lo], |a, b| a.sub(b));
            differences[slot].push(l2_sq(&v));
        }
        if n == steps {
            break;
        }
        runs = runs.par_iter().map(|p| step(p, dt, opts).map(|s| s.state)).collect::<Result<Vec<_>>>()?;
    }

    let fit_idx: Vec<usize> = (0..times.len()).filter(|&i| times[i] >= FIT_T_MIN - 1e-12).collect();
    let mut pairs = Vec::new();
    let mut gronwall_holds = true;
    for (slot, &(lo, hi)) in index_pairs.iter().enumerate() {
        let dk = kappas[hi] - kappas[lo];
        let gronwall = gronwall_rhs(&times, dk, &tracks[lo].h1, &tracks[lo].grad_sup)?;
        let diff = &differences[slot];
        let mut max_ratio: f64 = 0.0;
        for i in 1..times.len() {
            if gronwall[i] > 0.0 {
                max_ratio = max_ratio.max(diff[i] / gronwall[i]);
            } else if diff[i] > 0.0 {
                max_ratio = f64::INFINITY;
            }
        }
        gronwall_holds &= max_ratio <= 1.0 + GRONWALL_ALLOWANCE;
        let pts: Vec<usize> = fit_idx.iter().copied().filter(|&i| diff[i] > 0.0).collect();
        let time_exponent = (pts.len() >= 2).then(|| {
            let t: Vec<f64> = pts.iter().map(|&i| times[i]).collect();
            let y: Vec<f64> = pts.iter().map(|&i| diff[i]).collect();
            fit_slope(&t, &y)
        });
        pairs.push(PairHistory {
            kappa_low: kappas[lo],
            kappa_high: kappas[hi],
            difference: diff.clone(),
            gronwall,
            max_ratio,
            time_exponent,
        });
    }

    // Slopes across pairs need at least two distinct |Δκ| values.
    let kappa_slope = |i: usize| {
        let pts: Vec<(f64, f64)> = pairs
            .iter()
            .map(|p| (p.kappa_high - p.kappa_low, p.difference[i]))
            .filter(|(dk, d)| *dk > 0.0 && *d > 0.0)
            .collect();
        let first = pts.first()?.0;
        if pts.iter().all(|p| (p.0 - first).abs() <= 1e-12 * first) {
            return None;
        }
        let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        Some(fit_slope(&x, &y))
    };
    let sample_steps = crate::diagnostics::diagnostic_steps(dt, steps, config.diag_interval);
    let kappa_exponents: Vec<(f64, f64)> = sample_steps
        .iter()
        .filter(|&&i| times[i] >= FIT_T_MIN - 1e-12)
        .filter_map(|&i| kappa_slope(i).map(|s| (times[i], s)))
        .collect();
    let kappa_exponent = kappa_slope(steps);
    let max_time_exponent = pairs.iter().filter_map(|p| p.time_exponent).reduce(f64::max);
    Ok(ConvergenceReport {
        kappas: kappas.to_vec(),
        dt,
        times,
        pairs,
        kappa_exponents,
        kappa_exponent,
        max_time_exponent,
        gronwall_holds,
    })
}
