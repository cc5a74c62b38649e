//! `Λ`, the phase `Φ`, the resonance functional `σ̄` and the derivatives of `Φ` in `η`.

use nsc_localization::{CellIndex, Level, DEFAULT_FLOOR};
use nsc_spectral::Real;
use nsc_unknowns::Sign;
use serde::{Deserialize, Serialize};

use crate::error::{ResonanceError, Result};

pub type Vec3<T> = [T; 3];

fn norm<T: Real>(v: Vec3<T>) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn sub<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn nonzero<T: Real>(v: Vec3<T>, what: &str) -> Result<T> {
    let r = norm(v);
    if r > T::zero() && r.is_finite() {
        Ok(r)
    } else {
        Err(ResonanceError::Domain(format!("{what} must be a nonzero finite vector")))
    }
}

/// `Λ(ξ) = ξ_3/|ξ|`.
pub fn lambda<T: Real>(xi: Vec3<T>) -> Result<T> {
    Ok(xi[2] / nonzero(xi, "ξ")?)
}

/// `∇Λ(ξ) = (-ξ_3 ξ_1, -ξ_3 ξ_2, |ξ_h|^2) / |ξ|^3`.
pub fn grad_lambda<T: Real>(xi: Vec3<T>) -> Result<Vec3<T>> {
    let r = nonzero(xi, "ξ")?;
    let r3 = r * r * r;
    let h2 = xi[0] * xi[0] + xi[1] * xi[1];
    Ok([-xi[2] * xi[0] / r3, -xi[2] * xi[1] / r3, h2 / r3])
}

/// Output and input signs `(μ, μ_1, μ_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signs {
    pub mu: Sign,
    pub mu1: Sign,
    pub mu2: Sign,
}

impl Signs {
    pub fn new(mu: Sign, mu1: Sign, mu2: Sign) -> Self {
        Self { mu, mu1, mu2 }
    }

    /// The eight sign triples.
    pub fn all() -> Vec<Signs> {
        let both = [Sign::Plus, Sign::Minus];
        let mut out = Vec::with_capacity(8);
        for mu in both {
            for mu1 in both {
                for mu2 in both {
                    out.push(Signs { mu, mu1, mu2 });
                }
            }
        }
        out
    }

    pub fn flip(self) -> Self {
        Self { mu: self.mu.flip(), mu1: self.mu1.flip(), mu2: self.mu2.flip() }
    }

    pub fn label(self) -> String {
        let c = |s: Sign| if s == Sign::Plus { '+' } else { '-' };
        format!("{}{}{}", c(self.mu), c(self.mu1), c(self.mu2))
    }
}

/// `Φ = μΛ(ξ) + μ_1Λ(ξ-η) + μ_2Λ(η)`.
pub fn phi<T: Real>(xi: Vec3<T>, eta: Vec3<T>, signs: Signs) -> Result<T> {
    let zeta = sub(xi, eta);
    Ok(signs.mu.value::<T>() * lambda(xi)?
        + signs.mu1.value::<T>() * lambda(zeta)?
        + signs.mu2.value::<T>() * lambda(eta)?)
}

/// `σ̄(ξ, η) = ξ_3 η_h - η_3 ξ_h`.
pub fn sigma_bar<T: Real>(xi: Vec3<T>, eta: Vec3<T>) -> [T; 2] {
    let s = [xi[2] * eta[0] - eta[2] * xi[0], xi[2] * eta[1] - eta[2] * xi[1]];
    if cfg!(debug_assertions) {
        // |σ̄| = |(ξ × η)_h|.
        let c = [xi[1] * eta[2] - xi[2] * eta[1], xi[2] * eta[0] - xi[0] * eta[2]];
        let a = (s[0] * s[0] + s[1] * s[1]).sqrt();
        let b = (c[0] * c[0] + c[1] * c[1]).sqrt();
        let scale = norm(xi) * norm(eta);
        debug_assert!((a - b).abs() <= T::lit(1e-12) * scale + T::min_positive_value());
    }
    s
}

/// Derivatives of `Φ` in `η` at fixed `ξ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseDerivatives<T> {
    /// `(η·∇_η)Φ`.
    pub s: T,
    /// `(η_1∂_{η_2} - η_2∂_{η_1})Φ`.
    pub omega: T,
    /// `|η| ∂_{η_3}Φ`.
    pub d3: T,
    /// `∇_{η_h}Φ`.
    pub grad_h: [T; 2],
}

/// `∇_ηΦ = -μ_1∇Λ(ξ-η) + μ_2∇Λ(η)`.
pub fn grad_eta_phi<T: Real>(xi: Vec3<T>, eta: Vec3<T>, signs: Signs) -> Result<Vec3<T>> {
    let a = grad_lambda(sub(xi, eta))?;
    let b = grad_lambda(eta)?;
    let (m1, m2) = (signs.mu1.value::<T>(), signs.mu2.value::<T>());
    Ok([-m1 * a[0] + m2 * b[0], -m1 * a[1] + m2 * b[1], -m1 * a[2] + m2 * b[2]])
}

pub fn phase_derivatives<T: Real>(xi: Vec3<T>, eta: Vec3<T>, signs: Signs) -> Result<PhaseDerivatives<T>> {
    let g = grad_eta_phi(xi, eta, signs)?;
    Ok(PhaseDerivatives {
        s: eta[0] * g[0] + eta[1] * g[1] + eta[2] * g[2],
        omega: eta[0] * g[1] - eta[1] * g[0],
        d3: norm(eta) * g[2],
        grad_h: [g[0], g[1]],
    })
}

/// Nearest dyadic indices of a vector: `|ζ| ∈ [2^{k-1/2}, 2^{k+1/2})`, and the
/// same rounding for `√(1-Λ^2)` and `|Λ|`, capped at 0 and floored at the
/// default floor.
pub fn nearest_cell(v: Vec3<f64>) -> CellIndex {
    let r = norm(v);
    let h = (v[0] * v[0] + v[1] * v[1]).sqrt() / r;
    let l = (v[2] / r).abs();
    let level = |x: f64| {
        let e = x.log2().round() as i64;
        if e.min(0) <= DEFAULT_FLOOR as i64 {
            Level::Floor
        } else {
            Level::At(e.min(0) as i32)
        }
    };
    CellIndex::new(r.log2().round() as i32, level(h), level(l))
}

/// Everything the sweeps record about one `(ξ, η, signs)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolSample {
    pub xi: Vec3<f64>,
    pub eta: Vec3<f64>,
    /// `"μμ_1μ_2"`, e.g. `"+-+"`.
    pub signs: String,
    /// `Λ` of `ξ`, `ξ-η`, `η`.
    pub lambdas: [f64; 3],
    pub phi: f64,
    pub sigma_bar: [f64; 2],
    pub s_phi: f64,
    pub omega_phi: f64,
    pub d3_phi: f64,
    /// `(k, p, q)` of `ξ`, `ξ-η`, `η`, floors written as the floor exponent.
    pub indices: [[i32; 3]; 3],
}

impl SymbolSample {
    pub fn new(xi: Vec3<f64>, eta: Vec3<f64>, signs: Signs) -> Result<Self> {
        let zeta = sub(xi, eta);
        let lambdas = [lambda(xi)?, lambda(zeta)?, lambda(eta)?];
        let d = phase_derivatives(xi, eta, signs)?;
        let idx = |v: Vec3<f64>| {
            let c = nearest_cell(v);
            [c.k, c.p.exponent(DEFAULT_FLOOR), c.q.exponent(DEFAULT_FLOOR)]
        };
        Ok(Self {
            xi,
            eta,
            signs: signs.label(),
            lambdas,
            phi: phi(xi, eta, signs)?,
            sigma_bar: sigma_bar(xi, eta),
            s_phi: d.s,
            omega_phi: d.omega,
            d3_phi: d.d3,
            indices: [idx(xi), idx(zeta), idx(eta)],
        })
    }

    pub fn zeta(&self) -> Vec3<f64> {
        sub(self.xi, self.eta)
    }

    pub fn sigma_norm(&self) -> f64 {
        (self.sigma_bar[0] * self.sigma_bar[0] + self.sigma_bar[1] * self.sigma_bar[1]).sqrt()
    }
}
