//! The experiments behind each subcommand, as plain functions returning reports.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use serde::Serialize;

use nsc_energy::{CoeffTable, Family, Rational};
use nsc_localization::Level;
use nsc_norms::{axisymmetry_residual, b_norm, d_norm, x_norm, NormContext, NormReport};
use nsc_propagator::{log_times, measure_decay, DecayMeasurement, Localization};
use nsc_solver::{consistency_oracle, random_solenoidal, OracleReport, ProfileNorms, StepOptions};
use nsc_spectral::{make_grid, Checkpoint, Field, Grid, SpectralField, VelocityState};
use nsc_unknowns::{velocity_to_profiles, ProfilePair};

use crate::error::{CliError, Result};

/// `f̂(ξ) = exp(-|ξ|²/2)` without its mean: the wave packet watched by `decay`.
pub fn gaussian_packet(grid: &Grid<f64>) -> Field {
    let mut f = Field::from_fourier_fn(grid, |_, xi| {
        Complex::new((-(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / 2.0).exp(), 0.0)
    });
    f.remove_mean();
    f
}

fn parse_level(s: &str) -> Result<Level> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("floor") {
        return Ok(Level::Floor);
    }
    let v: i32 = s.parse().map_err(|_| CliError::Validation(format!("bad anisotropy index '{s}'")))?;
    if v > 0 {
        return Err(CliError::Validation(format!("anisotropy index {v} must be <= 0")));
    }
    Ok(Level::At(v))
}

/// `k,p,q` for a cell, `k,p` for a band, `k` for a shell, `whole` for no localization.
/// `p` and `q` may be `floor`.
pub fn parse_target(s: &str) -> Result<Localization> {
    if s.trim().eq_ignore_ascii_case("whole") {
        return Ok(Localization::Whole);
    }
    let parts: Vec<&str> = s.split(',').collect();
    let k: i32 = parts[0].trim().parse().map_err(|_| CliError::Validation(format!("bad shell index in '{s}'")))?;
    match parts.len() {
        1 => Ok(Localization::Shell { k }),
        2 => Ok(Localization::Band { k, p: parse_level(parts[1])? }),
        3 => Ok(Localization::Cell { k, p: parse_level(parts[1])?, q: parse_level(parts[2])? }),
        _ => Err(CliError::Validation(format!("cell '{s}' should read k,p,q"))),
    }
}

pub fn target_name(t: &Localization) -> String {
    match t {
        Localization::Cell { k, p, q } => format!("{k},{p},{q}"),
        Localization::Band { k, p } => format!("{k},{p}"),
        Localization::Shell { k } => format!("{k}"),
        Localization::Whole => "whole".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecaySummary {
    pub target: String,
    pub n: usize,
    pub box_scale: f64,
    pub times: Vec<f64>,
    pub sup_norms: Vec<f64>,
    pub bounds: Vec<f64>,
    pub fitted_slope: f64,
    pub fit_window: (usize, usize),
}

/// Sup norm of the localized packet under `e^{itΛ}` at `points` log-spaced times in `[t_min, t_max]`.
pub fn decay_experiment(
    n: usize,
    box_scale: f64,
    target: Localization,
    t_min: f64,
    t_max: f64,
    points: usize,
) -> Result<(DecaySummary, DecayMeasurement)> {
    if !(t_min > 0.0 && t_max > t_min) || points < 2 {
        return Err(CliError::Validation("need 0 < tmin < tmax and at least two points".into()));
    }
    let grid = make_grid(n, box_scale)?;
    let f = gaussian_packet(&grid);
    let m = measure_decay(&f, target, &log_times(t_min, t_max, points), 1.0, 0.0)?;
    let summary = DecaySummary {
        target: target_name(&target),
        n,
        box_scale,
        times: m.times.clone(),
        sup_norms: m.sup_norms.clone(),
        bounds: m.bound_values.clone(),
        fitted_slope: m.fitted_slope,
        fit_window: m.fit_window,
    };
    Ok((summary, m))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleSummary {
    pub n: usize,
    pub kappa: f64,
    pub seed: u64,
    pub t: f64,
    pub probes: Vec<OracleReport>,
    /// `log2` of successive relative-defect ratios, for halved probes.
    pub orders: Vec<f64>,
}

/// Time of the probed state; nonzero so the dispersive phases are not trivial.
pub const ORACLE_TIME: f64 = 0.5;

/// Consistency defect of the stepper on a random state with `max|u| = 1`.
pub fn oracle_experiment(n: usize, kappa: f64, seed: u64, dts: &[f64]) -> Result<OracleSummary> {
    if dts.is_empty() || dts.iter().any(|d| !(*d > 0.0)) {
        return Err(CliError::Validation("probe steps must be positive".into()));
    }
    if !(0.0..=1.0).contains(&kappa) {
        return Err(CliError::Validation("kappa in [0,1]".into()));
    }
    let grid = make_grid(n, 1.0)?;
    let u = random_solenoidal(&grid, 3, 1.0, seed);
    let mut state = velocity_to_profiles(&VelocityState::new(u, ORACLE_TIME, kappa));
    state.t = ORACLE_TIME;
    let probes = dts
        .iter()
        .map(|&dt| consistency_oracle(&state, dt, StepOptions::default()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let orders =
        probes.windows(2).map(|w| (w[0].relative / w[1].relative).log2() / (w[0].dt / w[1].dt).log2()).collect();
    Ok(OracleSummary { n, kappa, seed, t: ORACLE_TIME, probes, orders })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldNorms {
    pub name: String,
    pub l2: f64,
    #[serde(flatten)]
    pub norms: ProfileNorms,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormsSummary {
    pub n: u32,
    pub box_scale: f64,
    pub t: f64,
    pub kappa: f64,
    /// Velocity checkpoints only.
    pub axisymmetry: Option<f64>,
    pub fields: Vec<FieldNorms>,
}

/// The fields a checkpoint holds, named: a velocity becomes its two profiles.
fn checkpoint_fields(ck: &Checkpoint) -> Result<Vec<(String, SpectralField<f64>)>> {
    let (_, fields) = ck.to_fields::<f64>()?;
    Ok(match fields.len() {
        1 => vec![("scalar".into(), fields[0].clone())],
        2 => vec![("plus".into(), fields[0].clone()), ("minus".into(), fields[1].clone())],
        3 => {
            let u = [fields[0].clone(), fields[1].clone(), fields[2].clone()];
            let p: ProfilePair<f64> = velocity_to_profiles(&VelocityState::new(u, ck.t, ck.kappa));
            vec![("plus".into(), p.u_plus), ("minus".into(), p.u_minus)]
        }
        k => return Err(CliError::Validation(format!("checkpoint holds {k} components; expected 1, 2 or 3"))),
    })
}

/// `B`, `X` and `D` norms of a checkpoint, with the full `B` and `X` tables per field.
pub fn checkpoint_norms(path: &Path) -> Result<(NormsSummary, Vec<(String, NormReport, NormReport)>)> {
    let ck = Checkpoint::load(path)?;
    let (grid, raw) = ck.to_fields::<f64>()?;
    let ctx = NormContext::new(&grid);
    let axisymmetry = (raw.len() == 3).then(|| axisymmetry_residual(&[raw[0].clone(), raw[1].clone(), raw[2].clone()]));
    let mut fields = Vec::new();
    let mut tables = Vec::new();
    for (name, f) in checkpoint_fields(&ck)? {
        let b = b_norm(&f, &ctx.partition);
        let x = x_norm(&f, &ctx)?;
        let d = d_norm(&f, &ctx).map_err(|e| log::warn!("{name}: D norm skipped: {e}")).ok().map(|d| d.value);
        let norms = ProfileNorms { b: b.value, x: x.value, d };
        fields.push(FieldNorms { name: name.clone(), l2: f.l2_norm(), norms });
        tables.push((name, b, x));
    }
    Ok((NormsSummary { n: ck.n, box_scale: ck.box_scale, t: ck.t, kappa: ck.kappa, axisymmetry, fields }, tables))
}

/// Families written by `energy-coeffs`, in file order.
pub const COEFF_FAMILIES: [Family; 4] = [Family::C, Family::A, Family::APrime, Family::CPrime];

/// `family,n,k,numerator,denominator,value` for `c`, `a`, `a'` and `c'` up to `n_max`.
pub fn coefficient_csv(n_max: usize) -> Result<String> {
    let mut out = String::from("family,n,k,numerator,denominator,value\n");
    for family in COEFF_FAMILIES {
        let table = CoeffTable::<Rational>::build(family, n_max)?;
        for ((n, k), v) in &table.entries {
            let (num, den) = nsc_energy::Exact::parts(v);
            let value = nsc_energy::Exact::to_f64_lossy(v);
            let _ = writeln!(out, "{},{n},{k},{num},{den},{value:e}", family.name());
        }
    }
    Ok(out)
}
