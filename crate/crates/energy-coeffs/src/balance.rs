//! Energy balance along a computed run.

use serde::Serialize;

use crate::error::{EnergyError, Result};

/// Per-step norms recorded by a time integrator.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EnergySeries {
    pub kappa: f64,
    pub times: Vec<f64>,
    /// `‖u‖²`.
    pub energy: Vec<f64>,
    /// `‖∇u‖²`.
    pub dissipation: Vec<f64>,
    /// Sobolev order `m` of the next two columns, if recorded.
    pub order: Option<u32>,
    /// `‖u‖²_{H^m}`.
    pub hm_energy: Vec<f64>,
    /// `‖∇u‖²_{H^m}`.
    pub hm_dissipation: Vec<f64>,
    /// `‖∇u‖_∞`.
    pub grad_sup: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BalanceReport {
    /// `‖u(t)‖² - ‖u_0‖² + 2κ∫_0^t‖∇u‖²` at every recorded time.
    pub defects: Vec<f64>,
    pub max_defect: f64,
    /// `max |defect| / ‖u_0‖²`.
    pub relative_defect: f64,
    /// `H^m` version: `‖u(t)‖²_{H^m} + 2κ∫‖∇u‖²_{H^m} - ‖u_0‖²_{H^m}` and `∫‖∇u‖_∞‖u‖²_{H^m}`.
    pub hm_lhs: Vec<f64>,
    pub hm_rhs: Vec<f64>,
    /// Largest `lhs / rhs` where `rhs > 0`: the measured constant of the inequality.
    pub hm_constant: Option<f64>,
}

/// `∫_{t_0}^{t_i} f` for every `i` on a uniform grid, fourth order throughout:
/// Simpson on pairs of intervals, the three-eighths rule to absorb an odd count,
/// and a four-point cubic rule on the first interval.
pub fn cumulative_integral(times: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let m = times.len();
    if m != values.len() {
        return Err(EnergyError::Series("times and values differ in length".into()));
    }
    if m < 2 {
        return Ok(vec![0.0; m]);
    }
    let h = (times[m - 1] - times[0]) / (m - 1) as f64;
    if times.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1e-300)) {
        return Err(EnergyError::Series("samples must be equally spaced".into()));
    }
    let f = values;
    let mut out = vec![0.0; m];
    if m < 4 {
        for i in 1..m {
            out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        }
        return Ok(out);
    }
    out[1] = h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    for i in 2..m {
        out[i] = if i % 2 == 0 {
            out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i])
        } else {
            out[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i])
        };
    }
    Ok(out)
}

/// Balance defects for `m = 0` (an identity) and, when recorded, the `H^m` inequality.
pub fn energy_balance_report(series: &EnergySeries) -> Result<BalanceReport> {
    let n = series.times.len();
    if n == 0 || series.energy.len() != n || series.dissipation.len() != n {
        return Err(EnergyError::Series("energy and dissipation must be recorded at every time".into()));
    }
    let diss = cumulative_integral(&series.times, &series.dissipation)?;
    let defects: Vec<f64> =
        (0..n).map(|i| series.energy[i] - series.energy[0] + 2.0 * series.kappa * diss[i]).collect();
    let max_defect = defects.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let relative_defect = if series.energy[0] > 0.0 { max_defect / series.energy[0] } else { max_defect };

    let (mut hm_lhs, mut hm_rhs, mut hm_constant) = (Vec::new(), Vec::new(), None);
    if series.order.is_some() && series.hm_energy.len() == n {
        if series.hm_dissipation.len() != n || series.grad_sup.len() != n {
            return Err(EnergyError::Series("H^m columns must be complete".into()));
        }
        let hd = cumulative_integral(&series.times, &series.hm_dissipation)?;
        let source: Vec<f64> = (0..n).map(|i| series.grad_sup[i] * series.hm_energy[i]).collect();
        let hr = cumulative_integral(&series.times, &source)?;
        hm_lhs = (0..n).map(|i| series.hm_energy[i] + 2.0 * series.kappa * hd[i] - series.hm_energy[0]).collect();
        hm_rhs = hr;
        hm_constant = hm_lhs
            .iter()
            .zip(&hm_rhs)
            .filter(|(_, r)| **r > 0.0)
            .map(|(l, r)| l / r)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    }
    Ok(BalanceReport { defects, max_defect, relative_defect, hm_lhs, hm_rhs, hm_constant })
}

/// Least-squares slope of `log y` against `log⟨t⟩`, `⟨t⟩ = √(1 + t²)`: the growth
/// exponent `Cε` of a tracked norm.
pub fn growth_exponent(times: &[f64], values: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> =
        times.iter().zip(values).filter(|(_, v)| **v > 0.0).map(|(t, v)| ((1.0 + t * t).sqrt().ln(), v.ln())).collect();
    if pts.len() < 2 {
        return Err(EnergyError::Series("need two positive samples to fit".into()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(EnergyError::Series("times do not spread".into()));
    }
    Ok(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}
