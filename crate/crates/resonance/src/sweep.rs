//! Seeded sampling of `(ξ, η, signs)` near the zero set of `Φ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use nsc_unknowns::Sign;

use crate::symbols::{grad_eta_phi, phi, Signs, SymbolSample, Vec3};

/// Magnitudes are drawn log-uniformly from `[2^{lo}, 2^{hi}]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub log2_min: f64,
    pub log2_max: f64,
    /// The hypothesis reads `|Φ| ≤ 2^{-gap} · 2^{q_max}`.
    pub gap: f64,
    /// Violating samples kept in the report.
    pub keep: usize,
    /// Every odd sample is pushed onto `{Φ = 0}` by Newton steps in `η`, so the
    /// hypothesis region is hit often enough for the constants to settle.
    pub project: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { log2_min: -12.0, log2_max: 8.0, gap: 10.0, keep: 16, project: false }
    }
}

/// Sweep outcome. `min_ratio`/`max_ratio` are the extreme values of
/// `|σ̄| / (2^{q_max} 2^{k_max + k_min})` over the samples meeting the hypothesis,
/// with `2^{q_max}`, `2^k` read as the actual sizes `max|Λ|`, `|ζ|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_samples: usize,
    pub seed: u64,
    pub n_hypothesis_hits: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// `(|S_ηΦ| + |Ω_ηΦ|) / ((|ξ_h-η_h|/|ξ-η|^3)|σ̄|)` extremes.
    pub min_derivative_ratio: f64,
    pub max_derivative_ratio: f64,
    /// Smallest `2^{p_max}`, read as `max √(1-Λ^2)`.
    pub min_p_max_size: f64,
    /// The same ratio with rounded dyadic indices, on samples meeting the dyadic hypothesis.
    pub dyadic_hits: usize,
    pub dyadic_min_ratio: f64,
    pub dyadic_max_ratio: f64,
    pub violations: Vec<SymbolSample>,
    pub n_violations: usize,
}

fn norm(v: Vec3<f64>) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Log-uniform size, uniform direction.
pub fn random_vector(rng: &mut ChaCha8Rng, log2_min: f64, log2_max: f64) -> Vec3<f64> {
    let r = 2f64.powf(rng.gen_range(log2_min..=log2_max));
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let h = (1.0 - z * z).max(0.0).sqrt();
    [r * h * a.cos(), r * h * a.sin(), r * z]
}

pub fn random_signs(rng: &mut ChaCha8Rng) -> Signs {
    let mut s = || if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    Signs::new(s(), s(), s())
}

/// Per-sample RNG: one ChaCha stream per sample index, so results do not depend on threading.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Default)]
struct Hit {
    ratio: f64,
    derivative_ratio: f64,
    p_max_size: f64,
}

struct Outcome {
    sample: Option<SymbolSample>,
    hit: Option<Hit>,
    dyadic: Option<f64>,
    violation: bool,
}

fn evaluate(xi: Vec3<f64>, eta: Vec3<f64>, signs: Signs, cfg: &SweepConfig) -> Outcome {
    let empty = Outcome { sample: None, hit: None, dyadic: None, violation: false };
    let Ok(s) = SymbolSample::new(xi, eta, signs) else { return empty };
    let zeta = s.zeta();
    let q_size = s.lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let mags = [norm(xi), norm(zeta), norm(eta)];
    let (kmax, kmin) = (mags.iter().cloned().fold(0.0, f64::max), mags.iter().cloned().fold(f64::INFINITY, f64::min));
    let sigma = s.sigma_norm();

    let mut out = Outcome { sample: None, hit: None, dyadic: None, violation: false };
    let q_max = s.indices.iter().map(|c| c[2]).max().unwrap();
    if s.phi.abs() <= 2f64.powf(q_max as f64 - cfg.gap) {
        let k_max = s.indices.iter().map(|c| c[0]).max().unwrap();
        let k_min = s.indices.iter().map(|c| c[0]).min().unwrap();
        out.dyadic = Some(sigma / 2f64.powi(q_max + k_max + k_min));
    }
    if s.phi.abs() <= 2f64.powf(-cfg.gap) * q_size {
        let zh = (zeta[0] * zeta[0] + zeta[1] * zeta[1]).sqrt();
        let ratio = sigma / (q_size * kmax * kmin);
        let derivative_ratio = (s.s_phi.abs() + s.omega_phi.abs()) / (zh / mags[1].powi(3) * sigma);
        let p_max_size = s.lambdas.iter().fold(0.0f64, |m, l| m.max((1.0 - l * l).max(0.0).sqrt()));
        let bad = |v: f64| !(v > 0.0) || !v.is_finite();
        out.violation = bad(ratio) || bad(derivative_ratio) || bad(p_max_size);
        out.hit = Some(Hit { ratio, derivative_ratio, p_max_size });
        if out.violation {
            out.sample = Some(s);
        }
    }
    out
}

/// Newton steps `η ← η - Φ ∇_ηΦ / |∇_ηΦ|^2`; gives up on degenerate points.
fn project_to_zero_set(xi: Vec3<f64>, mut eta: Vec3<f64>, signs: Signs) -> Vec3<f64> {
    for _ in 0..12 {
        let (Ok(f), Ok(g)) = (phi(xi, eta, signs), grad_eta_phi(xi, eta, signs)) else { break };
        let g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        if f == 0.0 || !(g2 > 0.0) {
            break;
        }
        // Cap the step at half of |η| so the iterate cannot jump through the origin.
        let step = (f / g2).clamp(-0.5 * norm(eta) / g2.sqrt(), 0.5 * norm(eta) / g2.sqrt());
        let next = [eta[0] - step * g[0], eta[1] - step * g[1], eta[2] - step * g[2]];
        if !next.iter().all(|v| v.is_finite()) {
            break;
        }
        eta = next;
    }
    eta
}

/// Draws `n_samples` triples and checks the conclusions wherever `|Φ|` is small.
pub fn positivity_sweep(n_samples: usize, seed: u64) -> SweepReport {
    sweep_with(n_samples, seed, &SweepConfig::default())
}

pub fn sweep_with(n_samples: usize, seed: u64, cfg: &SweepConfig) -> SweepReport {
    let outcomes: Vec<Outcome> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let xi = random_vector(&mut rng, cfg.log2_min, cfg.log2_max);
            let mut eta = random_vector(&mut rng, cfg.log2_min, cfg.log2_max);
            let signs = random_signs(&mut rng);
            if cfg.project && i % 2 == 1 {
                eta = project_to_zero_set(xi, eta, signs);
            }
            evaluate(xi, eta, signs, cfg)
        })
        .collect();
    let mut report = SweepReport {
        n_samples,
        seed,
        n_hypothesis_hits: 0,
        min_ratio: f64::INFINITY,
        max_ratio: 0.0,
        min_derivative_ratio: f64::INFINITY,
        max_derivative_ratio: 0.0,
        min_p_max_size: f64::INFINITY,
        dyadic_hits: 0,
        dyadic_min_ratio: f64::INFINITY,
        dyadic_max_ratio: 0.0,
        violations: Vec::new(),
        n_violations: 0,
    };
    for o in outcomes {
        if let Some(d) = o.dyadic {
            report.dyadic_hits += 1;
            report.dyadic_min_ratio = report.dyadic_min_ratio.min(d);
            report.dyadic_max_ratio = report.dyadic_max_ratio.max(d);
        }
        if let Some(h) = o.hit {
            report.n_hypothesis_hits += 1;
            report.min_ratio = report.min_ratio.min(h.ratio);
            report.max_ratio = report.max_ratio.max(h.ratio);
            report.min_derivative_ratio = report.min_derivative_ratio.min(h.derivative_ratio);
            report.max_derivative_ratio = report.max_derivative_ratio.max(h.derivative_ratio);
            report.min_p_max_size = report.min_p_max_size.min(h.p_max_size);
        }
        if o.violation {
            report.n_violations += 1;
            if report.violations.len() < cfg.keep {
                report.violations.extend(o.sample);
            }
        }
    }
    if report.n_hypothesis_hits == 0 {
        report.min_ratio = 0.0;
        report.min_derivative_ratio = 0.0;
        report.min_p_max_size = 0.0;
    }
    if report.dyadic_hits == 0 {
        report.dyadic_min_ratio = 0.0;
    }
    report
}

/// `|a/b - 1|`, the seed-to-seed spread of an empirical constant.
pub fn relative_spread(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
