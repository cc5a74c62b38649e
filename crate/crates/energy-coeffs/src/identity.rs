//! Spectral quadrature checks of the weighted energy identities on concrete fields.

use serde::Serialize;

use nsc_spectral::{
    s_vector, vector_gradient_norm, vector_inner, vector_l2_norm, vector_laplacian, vector_map, Real, VectorField,
    OUTER_MASS_LIMIT,
};

use crate::coeffs::{c_coeff, derive_cprime};
use crate::error::Result;
use crate::rational::Exact;
use crate::Rational;

/// Highest order the identity check accepts; `S`-iterates outgrow the window beyond it.
pub const MAX_IDENTITY_ORDER: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|` over the sum of the absolute terms on the right.
    pub defect: f64,
    pub outer_mass_fraction: f64,
}

fn iterate<T: Real>(u: &VectorField<T>, n: usize, fraction: &mut f64, shift: T) -> Vec<VectorField<T>> {
    let mut out = vec![u.clone()];
    for _ in 0..n {
        let s = s_vector(out.last().unwrap());
        *fraction = fraction.max(s.outer_mass_fraction);
        let prev = out.last().unwrap();
        let next = if shift == T::zero() {
            s.value
        } else {
            [s.value[0].axpy(shift, &prev[0]), s.value[1].axpy(shift, &prev[1]), s.value[2].axpy(shift, &prev[2])]
        };
        out.push(next);
    }
    out
}

fn warn_window(fraction: f64, what: &str) {
    if fraction > OUTER_MASS_LIMIT {
        log::warn!("{what}: S-iterates carry {fraction:.2e} of their mass near the box edge; the identity is not expected to hold");
    }
}

fn coeff_row<F: Fn(usize, usize) -> Result<Rational>>(n: usize, f: F) -> Result<Vec<f64>> {
    (0..=n).map(|k| f(n, k).map(|v| v.to_f64_lossy())).collect()
}

/// `-⟨Sⁿu, SⁿΔu⟩` against `Σ_k c_{n,k}‖∇S^k u‖²`.
pub fn verify_energy_identity<T: Real>(n: usize, u: &VectorField<T>) -> Result<IdentityReport> {
    if n > MAX_IDENTITY_ORDER {
        log::warn!("energy identity requested at order {n}; above {MAX_IDENTITY_ORDER} the window error dominates");
    }
    let c = coeff_row(n, c_coeff::<Rational>)?;
    let mut fraction: f64 = 0.0;
    let su = iterate(u, n, &mut fraction, T::zero());
    let slap = iterate(&vector_laplacian(u), n, &mut fraction, T::zero());
    warn_window(fraction, "energy identity");
    let lhs = -vector_inner(&su[n], &slap[n]).re.to64();
    let terms: Vec<f64> = (0..=n).map(|k| c[k] * vector_gradient_norm(&su[k]).to64().powi(2)).collect();
    let rhs: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    Ok(IdentityReport { n, lhs, rhs, defect: (lhs - rhs).abs() / scale, outer_mass_fraction: fraction })
}

/// `⟨Sⁿu, (S-2)ⁿu⟩` against `Σ_k c'_{n,k}‖S^k u‖²`.
pub fn verify_cprime_identity<T: Real>(n: usize, u: &VectorField<T>) -> Result<IdentityReport> {
    let c: Vec<f64> = derive_cprime::<Rational>(n)?.iter().map(|v| v.to_f64_lossy()).collect();
    let mut fraction: f64 = 0.0;
    let su = iterate(u, n, &mut fraction, T::zero());
    let shifted = iterate(u, n, &mut fraction, T::lit(-2.0));
    warn_window(fraction, "c' identity");
    let lhs = vector_inner(&su[n], &shifted[n]).re.to64();
    let terms: Vec<f64> = (0..=n).map(|k| c[k] * vector_l2_norm(&su[k]).to64().powi(2)).collect();
    let rhs: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    Ok(IdentityReport { n, lhs, rhs, defect: (lhs - rhs).abs() / scale, outer_mass_fraction: fraction })
}

/// Which of the two weighted energies the dissipation check is run for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weighting {
    /// `‖S^k u‖²`, dissipated through `‖∇S^k u‖²` with the `c` row.
    L2,
    /// `‖|∇|^{-1}S^k u‖²`, dissipated through `‖S^k u‖²` with the `c'` row.
    InverseGradient,
}

/// Both sides of the order-`n` energy statements along the heat flow `∂_t u = κΔu`,
/// where the nonlinear terms are absent and everything is exact.
#[derive(Clone, Debug, Serialize)]
pub struct DissipationReport {
    pub n: usize,
    pub weighting: Weighting,
    /// `X_k = E_k(t) - E_k(0)`.
    pub energy_changes: Vec<f64>,
    /// `2κ∫_0^t F_k`, `F_k` the dissipated quantity of order `k`.
    pub dissipation: Vec<f64>,
    /// `X_n + Σ_k c_{n,k} 2κ∫F_k`, zero up to quadrature.
    pub identity_residual: f64,
    /// Size of the terms in the identity, for relative comparisons.
    pub scale: f64,
    pub outer_mass_fraction: f64,
}

impl DissipationReport {
    /// `Σ_k w_k X_k + 2κ∫F_n`, which the estimate says is `≤ 0` on the heat flow.
    pub fn weighted_lhs(&self, weights: &[f64]) -> f64 {
        let x: f64 = weights.iter().zip(&self.energy_changes).map(|(w, x)| w * x).sum();
        x + self.dissipation[self.n]
    }
}

// Composite Simpson on an even number of equal intervals.
fn simpson(values: &[f64], h: f64) -> f64 {
    let m = values.len() - 1;
    let mut s = values[0] + values[m];
    for (i, v) in values.iter().enumerate().take(m).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

/// Runs the heat flow from `u0` to `t` with `intervals` (made even) Simpson intervals.
pub fn heat_flow_dissipation<T: Real>(
    n: usize,
    u0: &VectorField<T>,
    kappa: f64,
    t: f64,
    intervals: usize,
    weighting: Weighting,
) -> Result<DissipationReport> {
    let c: Vec<f64> = match weighting {
        Weighting::L2 => coeff_row(n, c_coeff::<Rational>)?,
        Weighting::InverseGradient => derive_cprime::<Rational>(n)?.iter().map(|v| v.to_f64_lossy()).collect(),
    };
    let m = intervals.max(2) + intervals % 2;
    let h = t / m as f64;
    let mut fraction: f64 = 0.0;
    // energies[i][k], dissipated[i][k] at time i·h.
    let mut energies = Vec::with_capacity(m + 1);
    let mut dissipated = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let decay = T::lit(kappa * h * i as f64);
        let u = vector_map(u0, |f| {
            f.apply_real_multiplier(|xi| (-(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) * decay).exp())
        });
        let su = iterate(&u, n, &mut fraction, T::zero());
        let (e, d): (Vec<f64>, Vec<f64>) = su
            .iter()
            .map(|v| match weighting {
                Weighting::L2 => (vector_l2_norm(v).to64().powi(2), vector_gradient_norm(v).to64().powi(2)),
                Weighting::InverseGradient => {
                    let inv = vector_map(v, |f| {
                        f.apply_real_multiplier(|xi| {
                            let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
                            if r == T::zero() {
                                T::zero()
                            } else {
                                r.recip()
                            }
                        })
                    });
                    (vector_l2_norm(&inv).to64().powi(2), vector_l2_norm(v).to64().powi(2))
                }
            })
            .unzip();
        energies.push(e);
        dissipated.push(d);
    }
    warn_window(fraction, "heat-flow dissipation");
    let energy_changes: Vec<f64> = (0..=n).map(|k| energies[m][k] - energies[0][k]).collect();
    let dissipation: Vec<f64> =
        (0..=n).map(|k| 2.0 * kappa * simpson(&dissipated.iter().map(|d| d[k]).collect::<Vec<_>>(), h)).collect();
    let identity_residual = energy_changes[n] + (0..=n).map(|k| c[k] * dissipation[k]).sum::<f64>();
    let scale = energy_changes[n].abs() + (0..=n).map(|k| (c[k] * dissipation[k]).abs()).sum::<f64>();
    Ok(DissipationReport {
        n,
        weighting,
        energy_changes,
        dissipation,
        identity_residual,
        scale,
        outer_mass_fraction: fraction,
    })
}
