//! Sup-norm decay of localized linear waves and the matching bounds.

use std::io::Write;

use serde::{Deserialize, Serialize};

use nsc_localization::{shell_weight, CellIndex, Level, Partition};
use nsc_spectral::{Real, SpectralField};

use crate::error::{PropagatorError, Result};
use crate::linear::evolve_linear;
use nsc_unknowns::Sign;

/// Which part of the field is watched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Localization {
    /// `P_{k,p,q}`.
    Cell { k: i32, p: Level, q: Level },
    /// `P_{k,p}`, every `q` together.
    Band { k: i32, p: Level },
    /// `P_k` only.
    Shell { k: i32 },
    /// No localization.
    Whole,
}

impl Localization {
    pub fn cell(&self) -> Option<CellIndex> {
        match *self {
            Localization::Cell { k, p, q } => Some(CellIndex::new(k, p, q)),
            _ => None,
        }
    }

    fn apply<T: Real>(&self, f: &SpectralField<T>, part: &Partition) -> SpectralField<T> {
        match *self {
            Localization::Cell { k, p, q } => part.apply_pkpq(f, k, p, q),
            Localization::Band { k, p } => part.apply_pkp(f, k, p),
            Localization::Shell { k } => f.apply_real_multiplier(|xi| shell_weight(k, xi)),
            Localization::Whole => f.clone(),
        }
    }

    fn shell(&self) -> i32 {
        match *self {
            Localization::Cell { k, .. } | Localization::Band { k, .. } | Localization::Shell { k } => k,
            Localization::Whole => 0,
        }
    }
}

fn k_factor(k: i32) -> f64 {
    2f64.powf(1.5 * k as f64 - 3.0 * k.max(0) as f64)
}

/// `2^{3k/2 - 3k⁺} min{2^{2p+q}, 2^{-p-q/2} t^{-3/2}} f_D`, without the implicit constant.
pub fn d_norm_bound(k: i32, p: i32, q: i32, t: f64, f_d: f64) -> f64 {
    let (p, q) = (p as f64, q as f64);
    let early = 2f64.powf(2.0 * p + q);
    let late = 2f64.powf(-p - 0.5 * q) * t.powf(-1.5);
    k_factor(k) * early.min(late) * f_d
}

/// `2^{3k/2 - 3k⁺} t^{-1+γ} f_D`, the rate without anisotropic localization.
pub fn whole_field_bound(k: i32, t: f64, gamma: f64, f_d: f64) -> f64 {
    k_factor(k) * t.powf(-1.0 + gamma) * f_d
}

/// One line of the JSON-lines output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecaySample {
    pub t: f64,
    pub sup_norm: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayMeasurement {
    pub target: Localization,
    pub times: Vec<f64>,
    pub sup_norms: Vec<f64>,
    pub bound_values: Vec<f64>,
    pub fitted_slope: f64,
    /// Sample indices `[start, end)` entering the fit.
    pub fit_window: (usize, usize),
}

impl DecayMeasurement {
    pub fn cell(&self) -> Option<CellIndex> {
        self.target.cell()
    }

    pub fn samples(&self) -> Vec<DecaySample> {
        (0..self.times.len())
            .map(|i| DecaySample { t: self.times[i], sup_norm: self.sup_norms[i], bound: self.bound_values[i] })
            .collect()
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for s in self.samples() {
            serde_json::to_writer(&mut w, &s)?;
            writeln!(w)?;
        }
        Ok(())
    }

    /// Largest ratio between consecutive sup-norms, for flatness checks.
    pub fn spread(&self) -> f64 {
        let max = self.sup_norms.iter().cloned().fold(0.0, f64::max);
        let min = self.sup_norms.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

// First time at which the t^{-3/2} branch of the cell bound is the smaller one.
fn branch_switch(target: &Localization, part: &Partition) -> f64 {
    match *target {
        Localization::Cell { p, q, .. } => {
            let (p, q) = (p.exponent(part.p_min) as f64, q.exponent(part.q_min) as f64);
            2f64.powf(-2.0 * p - q)
        }
        _ => 0.0,
    }
}

/// Sup-norms of `P e^{itΛ} f` over `times` (κ = 0) and the log-log slope.
///
/// For a single cell the fit uses the samples where the late branch of the
/// bound is active; otherwise every sample. `gamma` only enters the bound
/// recorded for unlocalized targets.
pub fn measure_decay<T: Real>(
    f: &SpectralField<T>,
    target: Localization,
    times: &[f64],
    f_d: f64,
    gamma: f64,
) -> Result<DecayMeasurement> {
    if times.is_empty() || times.iter().any(|t| !(*t > 0.0)) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PropagatorError::Times("need positive, strictly increasing times".into()));
    }
    let part = Partition::default();
    let local = target.apply(f, &part);
    if local.l2_norm() == T::zero() {
        return Err(PropagatorError::EmptyCell(format!("{target:?}")));
    }
    let sup_norms: Vec<f64> =
        times.iter().map(|&t| evolve_linear(&local, T::lit(t), Sign::Plus, T::zero()).sup_norm().to64()).collect();
    let bound_values: Vec<f64> = times
        .iter()
        .map(|&t| match target {
            Localization::Cell { k, p, q } => d_norm_bound(k, p.exponent(part.p_min), q.exponent(part.q_min), t, f_d),
            _ => whole_field_bound(target.shell(), t, gamma, f_d),
        })
        .collect();
    let switch = branch_switch(&target, &part);
    let start = times.iter().position(|&t| t >= switch).unwrap_or(times.len());
    let end = times.len();
    if end - start < 2 {
        return Err(PropagatorError::FitWindow { found: end - start });
    }
    let fitted_slope = fit_slope(&times[start..end], &sup_norms[start..end]);
    Ok(DecayMeasurement {
        target,
        times: times.to_vec(),
        sup_norms,
        bound_values,
        fitted_slope,
        fit_window: (start, end),
    })
}

/// `n` points spaced evenly in `log t` from `t0` to `t1`.
pub fn log_times(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t0 * (t1 / t0).powf(i as f64 / (n - 1) as f64)).collect()
}
