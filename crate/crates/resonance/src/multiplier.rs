//! Multipliers `𝔪 = |ξ| 𝔫` built from the angular factors the nonlinearity is made of,
//! the resonant / nonresonant split and the normal-form denominators.

use num_complex::Complex;

use nsc_localization::psi;

use crate::error::{ResonanceError, Result};
use crate::symbols::{lambda, phi, Signs, Vec3};

/// One of `ξ`, `ξ-η`, `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Zeta {
    Xi,
    XiMinusEta,
    Eta,
}

impl Zeta {
    pub const ALL: [Zeta; 3] = [Zeta::Xi, Zeta::XiMinusEta, Zeta::Eta];

    fn pick(self, xi: Vec3<f64>, eta: Vec3<f64>) -> Vec3<f64> {
        match self {
            Zeta::Xi => xi,
            Zeta::XiMinusEta => [xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]],
            Zeta::Eta => eta,
        }
    }
}

/// Basis factors, all bounded by 1 in modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `Λ(ζ)`.
    Lambda(Zeta),
    /// `√(1 - Λ(ζ)^2)`.
    Horizontal(Zeta),
    /// `ξ_h·θ_h / (|ξ_h||θ_h|)`, `θ ∈ {ξ-η, η}`.
    Cos(Zeta),
    /// `ξ_h^⊥·θ_h / (|ξ_h||θ_h|)`.
    Sin(Zeta),
}

impl Factor {
    pub fn eval(self, xi: Vec3<f64>, eta: Vec3<f64>) -> Result<f64> {
        match self {
            Factor::Lambda(z) => lambda(z.pick(xi, eta)),
            Factor::Horizontal(z) => {
                let l = lambda(z.pick(xi, eta))?;
                Ok((1.0 - l * l).max(0.0).sqrt())
            }
            Factor::Cos(z) | Factor::Sin(z) => {
                if z == Zeta::Xi {
                    return Err(ResonanceError::Domain("the angle factor needs θ ∈ {ξ-η, η}".into()));
                }
                let t = z.pick(xi, eta);
                let a = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
                let b = (t[0] * t[0] + t[1] * t[1]).sqrt();
                if a == 0.0 || b == 0.0 {
                    return Err(ResonanceError::Domain("angle factor needs ξ_h, θ_h ≠ 0".into()));
                }
                let v = match self {
                    Factor::Cos(_) => xi[0] * t[0] + xi[1] * t[1],
                    _ => -xi[1] * t[0] + xi[0] * t[1],
                };
                Ok(v / (a * b))
            }
        }
    }
}

/// `ψ(Φ/λ)` or `1 - ψ(Φ/λ)` applied on top of a multiplier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseCut {
    Resonant { lambda: f64 },
    NonResonant { lambda: f64 },
}

/// `𝔪(ξ, η) = |ξ| Σ_i c_i Π_j F_ij(ξ, η)`, optionally cut in `Φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierSpec {
    pub terms: Vec<(f64, Vec<Factor>)>,
    pub cut: Option<PhaseCut>,
}

impl MultiplierSpec {
    /// `𝔪 ≡ |ξ|`.
    pub fn modulus() -> Self {
        Self { terms: vec![(1.0, Vec::new())], cut: None }
    }

    /// `|ξ| Λ(ζ_1)√(1-Λ(ζ_2)^2) n̄`, one element of the spanning set.
    pub fn basis(z1: Zeta, z2: Zeta, nbar: Factor) -> Self {
        Self { terms: vec![(1.0, vec![Factor::Lambda(z1), Factor::Horizontal(z2), nbar])], cut: None }
    }

    /// Every element of the spanning set, in a fixed order.
    pub fn spanning_set() -> Vec<MultiplierSpec> {
        let mut nbar: Vec<Factor> = Vec::new();
        for z in Zeta::ALL {
            nbar.push(Factor::Lambda(z));
            nbar.push(Factor::Horizontal(z));
        }
        for t in [Zeta::XiMinusEta, Zeta::Eta] {
            nbar.push(Factor::Cos(t));
            nbar.push(Factor::Sin(t));
        }
        let mut out = Vec::new();
        for z1 in Zeta::ALL {
            for z2 in Zeta::ALL {
                for &f in &nbar {
                    out.push(Self::basis(z1, z2, f));
                }
            }
        }
        out
    }

    pub fn plus(mut self, other: &MultiplierSpec, c: f64) -> Self {
        self.terms.extend(other.terms.iter().map(|(a, f)| (a * c, f.clone())));
        self
    }

    /// `Σ |c_i|`, a bound for `|𝔪|/|ξ|`.
    pub fn coefficient_mass(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    /// Value at `(ξ, η)`; the signs only matter when a phase cut is present.
    pub fn eval(&self, xi: Vec3<f64>, eta: Vec3<f64>, signs: Signs) -> Result<f64> {
        let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        let mut sum = 0.0;
        for (c, factors) in &self.terms {
            let mut v = *c;
            for f in factors {
                v *= f.eval(xi, eta)?;
            }
            sum += v;
        }
        let cut = match self.cut {
            None => 1.0,
            Some(PhaseCut::Resonant { lambda }) => psi(phi(xi, eta, signs)? / lambda),
            Some(PhaseCut::NonResonant { lambda }) => 1.0 - psi(phi(xi, eta, signs)? / lambda),
        };
        Ok(r * sum * cut)
    }
}

/// `𝔪 = ψ(Φ/λ)𝔪 + (1 - ψ(Φ/λ))𝔪`.
pub fn res_nr_split(spec: &MultiplierSpec, lambda_cut: f64) -> Result<(MultiplierSpec, MultiplierSpec)> {
    if !(lambda_cut > 0.0) {
        return Err(ResonanceError::Domain("the phase cut λ must be positive".into()));
    }
    if spec.cut.is_some() {
        return Err(ResonanceError::Domain("multiplier is already cut in Φ".into()));
    }
    let mut res = spec.clone();
    res.cut = Some(PhaseCut::Resonant { lambda: lambda_cut });
    let mut nr = spec.clone();
    nr.cut = Some(PhaseCut::NonResonant { lambda: lambda_cut });
    Ok((res, nr))
}

fn dot(a: Vec3<f64>, b: Vec3<f64>) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `iΦ + κ|ξ|^2 - (2a+1)κ|η|^2 - (2b+1)κ|ξ-η|^2`, the denominator after `a` and `b`
/// scaling fields have been moved onto the inputs.
pub fn normal_form_denominator(
    xi: Vec3<f64>,
    eta: Vec3<f64>,
    signs: Signs,
    kappa: f64,
    a: u32,
    b: u32,
) -> Result<Complex<f64>> {
    let zeta = Zeta::XiMinusEta.pick(xi, eta);
    let re =
        kappa * dot(xi, xi) - (2 * a + 1) as f64 * kappa * dot(eta, eta) - (2 * b + 1) as f64 * kappa * dot(zeta, zeta);
    Ok(Complex::new(re, phi(xi, eta, signs)?))
}

/// `iΦ + 2κ(ξ-η)·η`, the `a = b = 0` denominator written through polarization.
pub fn polarized_denominator(xi: Vec3<f64>, eta: Vec3<f64>, signs: Signs, kappa: f64) -> Result<Complex<f64>> {
    let zeta = Zeta::XiMinusEta.pick(xi, eta);
    Ok(Complex::new(2.0 * kappa * dot(zeta, eta), phi(xi, eta, signs)?))
}
