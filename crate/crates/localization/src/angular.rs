//! Angular localizations `R̄_{≤l}`, `R̄_l` and `R_l` for axisymmetric fields.
//!
//! Angular projection commutes with the Fourier transform, so it is done on the
//! coefficients. The grid frequencies lie on lattice spheres `|j|^2 = m`; on each
//! sphere an axisymmetric coefficient array depends only on `j_3`, i.e. on
//! `μ = j_3/√m`. The degree-`n` component is the projection onto the `n`-th
//! orthogonal polynomial in `μ` for the counting measure of the lattice points,
//! which is the discrete analogue of the Legendre expansion. Because the
//! polynomials are orthonormal for the same inner product as Parseval, the
//! degree components are exactly orthogonal and sum to the field.

use std::collections::BTreeMap;

use num_complex::Complex;
use rayon::prelude::*;

use nsc_spectral::{Grid, Real, SpectralField};

use crate::bump::{psi, varphi};
use crate::cells::Level;
use crate::error::{LocalizationError, Result};

/// Relative azimuthal variance allowed per shell.
pub const SHELL_TOLERANCE: f64 = 1e-8;
/// Absolute floor of the variance test, relative to the total mass.
pub const TOTAL_TOLERANCE: f64 = 1e-16;

const NO_GROUP: u32 = u32::MAX;

/// Which angular weights to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `ψ(2^{-l} n)`.
    Leq,
    /// `φ(2^{-l} n)`.
    Exact,
    /// Zero for `p + l < 0`, `R̄_{≤l}` for `p + l = 0`, `R̄_l` otherwise.
    Switched { p: Level, p_floor: i32 },
}

impl Variant {
    /// The variant the switched rule selects, or `None` when `R_l = 0`.
    pub fn resolve(self, l: u32) -> Option<Variant> {
        match self {
            Variant::Switched { p, p_floor } => {
                let s = p.exponent(p_floor) + l as i32;
                if s < 0 {
                    None
                } else if s == 0 {
                    Some(Variant::Leq)
                } else {
                    Some(Variant::Exact)
                }
            }
            v => Some(v),
        }
    }

    fn weight(self, l: u32, degree: usize) -> f64 {
        let x = degree as f64 * 2f64.powi(-(l as i32));
        match self {
            Variant::Leq => psi(x),
            Variant::Exact => varphi(x),
            Variant::Switched { .. } => unreachable!("resolved before use"),
        }
    }
}

#[derive(Clone, Debug)]
struct Sphere {
    m: i64,
    /// First group index of this sphere in the flat group arrays.
    offset: usize,
    nodes: usize,
    /// `sqrt(count)` per node.
    sqrt_weight: Vec<f64>,
    /// Column `d` holds the degree-`d` orthonormal vector; row-major `nodes x nodes`.
    basis: Vec<f64>,
}

/// Per-grid data for angular projection. Building it costs
/// `Σ nodes^3` flops over the lattice spheres.
#[derive(Clone, Debug)]
pub struct AngularBasis {
    n: usize,
    spheres: Vec<Sphere>,
    /// Group of each grid mode, `NO_GROUP` on Nyquist rows.
    group_of: Vec<u32>,
    /// Sphere of each group.
    sphere_of_group: Vec<u32>,
    group_count: Vec<u32>,
    max_nodes: usize,
}

impl AngularBasis {
    pub fn new<T: Real>(grid: &Grid<T>) -> Self {
        // m -> j3 -> count
        let mut shells: BTreeMap<i64, BTreeMap<i64, u32>> = BTreeMap::new();
        for idx in 0..grid.len() {
            if grid.is_nyquist(idx) {
                continue;
            }
            let j = grid.wavenumbers(idx);
            let m = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
            *shells.entry(m).or_default().entry(j[2]).or_default() += 1;
        }

        let mut group_ids: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        let mut sphere_of_group = Vec::new();
        let mut group_count = Vec::new();
        let mut layout = Vec::with_capacity(shells.len());
        for (si, (m, groups)) in shells.iter().enumerate() {
            let offset = group_count.len();
            let mut mu = Vec::with_capacity(groups.len());
            let mut w = Vec::with_capacity(groups.len());
            for (&j3, &count) in groups {
                group_ids.insert((*m, j3), group_count.len() as u32);
                sphere_of_group.push(si as u32);
                group_count.push(count);
                mu.push(if *m == 0 { 0.0 } else { j3 as f64 / (*m as f64).sqrt() });
                w.push(count as f64);
            }
            layout.push((*m, offset, mu, w));
        }

        let spheres: Vec<Sphere> = layout
            .into_par_iter()
            .map(|(m, offset, mu, w)| {
                let sqrt_weight: Vec<f64> = w.iter().map(|c| c.sqrt()).collect();
                let basis = lanczos_basis(&mu, &sqrt_weight);
                Sphere { m, offset, nodes: mu.len(), sqrt_weight, basis }
            })
            .collect();

        let group_of = (0..grid.len())
            .map(|idx| {
                if grid.is_nyquist(idx) {
                    return NO_GROUP;
                }
                let j = grid.wavenumbers(idx);
                let m = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
                group_ids[&(m, j[2])]
            })
            .collect();
        let max_nodes = spheres.iter().map(|s| s.nodes).max().unwrap_or(0);
        Self { n: grid.n(), spheres, group_of, sphere_of_group, group_count, max_nodes }
    }

    pub fn sphere_count(&self) -> usize {
        self.spheres.len()
    }

    /// Largest number of distinct `j_3` levels on one sphere, i.e. the top degree plus one.
    pub fn max_degree(&self) -> usize {
        self.max_nodes.saturating_sub(1)
    }

    fn check_grid<T: Real>(&self, f: &SpectralField<T>) -> Result<()> {
        if f.grid().n() != self.n {
            return Err(LocalizationError::GridMismatch { expected: self.n, found: f.grid().n() });
        }
        Ok(())
    }

    /// Group means and the per-sphere azimuthal variance check.
    fn group_means<T: Real>(&self, f: &SpectralField<T>) -> Result<Vec<Complex<f64>>> {
        self.check_grid(f)?;
        let groups = self.group_count.len();
        let mut sums = vec![Complex::new(0.0, 0.0); groups];
        for (c, &g) in f.coeffs().iter().zip(&self.group_of) {
            if g != NO_GROUP {
                sums[g as usize] += Complex::new(c.re.to64(), c.im.to64());
            }
        }
        let means: Vec<Complex<f64>> = sums.iter().zip(&self.group_count).map(|(s, &c)| s / c as f64).collect();

        let mut variance = vec![0.0; self.spheres.len()];
        let mut mass = vec![0.0; self.spheres.len()];
        let mut total = 0.0;
        for (c, &g) in f.coeffs().iter().zip(&self.group_of) {
            if g == NO_GROUP {
                continue;
            }
            let c = Complex::new(c.re.to64(), c.im.to64());
            let s = self.sphere_of_group[g as usize] as usize;
            variance[s] += (c - means[g as usize]).norm_sqr();
            mass[s] += c.norm_sqr();
            total += c.norm_sqr();
        }
        for (s, sphere) in self.spheres.iter().enumerate() {
            let tolerance = SHELL_TOLERANCE * mass[s] + TOTAL_TOLERANCE * total;
            if variance[s] > tolerance {
                return Err(LocalizationError::NotAxisymmetric { shell: sphere.m, variance: variance[s], tolerance });
            }
        }
        Ok(means)
    }

    /// Degree coefficients `c_{s,d}` of every sphere, in flat group layout.
    fn degree_coefficients(&self, means: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut out = vec![Complex::new(0.0, 0.0); means.len()];
        let chunks = split_by_sphere(&mut out, &self.spheres);
        chunks.into_par_iter().zip(self.spheres.par_iter()).for_each(|(dst, s)| {
            let g = &means[s.offset..s.offset + s.nodes];
            for d in 0..s.nodes {
                let mut acc = Complex::new(0.0, 0.0);
                for i in 0..s.nodes {
                    acc += g[i] * (s.basis[i * s.nodes + d] * s.sqrt_weight[i]);
                }
                dst[d] = acc;
            }
        });
        out
    }

    /// Applies the degree weights `w(d)` and writes the result back on the grid.
    pub fn apply_degree_weights<T: Real, W>(&self, f: &SpectralField<T>, weight: W) -> Result<SpectralField<T>>
    where
        W: Fn(usize) -> f64 + Sync,
    {
        let means = self.group_means(f)?;
        let coeffs = self.degree_coefficients(&means);
        let mut values = vec![Complex::new(0.0, 0.0); means.len()];
        let chunks = split_by_sphere(&mut values, &self.spheres);
        chunks.into_par_iter().zip(self.spheres.par_iter()).for_each(|(dst, s)| {
            let c = &coeffs[s.offset..s.offset + s.nodes];
            let weights: Vec<f64> = (0..s.nodes).map(&weight).collect();
            for i in 0..s.nodes {
                let mut acc = Complex::new(0.0, 0.0);
                for d in 0..s.nodes {
                    if weights[d] != 0.0 {
                        acc += c[d] * (weights[d] * s.basis[i * s.nodes + d]);
                    }
                }
                dst[i] = acc / s.sqrt_weight[i];
            }
        });
        let out: Vec<Complex<T>> = self
            .group_of
            .iter()
            .map(|&g| {
                if g == NO_GROUP {
                    Complex::new(T::zero(), T::zero())
                } else {
                    let v = values[g as usize];
                    Complex::new(T::lit(v.re), T::lit(v.im))
                }
            })
            .collect();
        Ok(SpectralField::from_coeffs(f.grid(), out).expect("length matches grid"))
    }

    /// `R̄_{≤l}`, `R̄_l` or the switched `R_l`.
    pub fn apply_rl<T: Real>(&self, f: &SpectralField<T>, l: u32, variant: Variant) -> Result<SpectralField<T>> {
        match variant.resolve(l) {
            None => {
                self.check_grid(f)?;
                Ok(SpectralField::zeros(f.grid()))
            }
            Some(v) => self.apply_degree_weights(f, |d| v.weight(l, d)),
        }
    }

    /// Projection onto a single degree.
    pub fn degree_component<T: Real>(&self, f: &SpectralField<T>, degree: usize) -> Result<SpectralField<T>> {
        self.apply_degree_weights(f, |d| if d == degree { 1.0 } else { 0.0 })
    }

    /// `‖Π_d f‖_2^2` for every degree `d` (physical normalization).
    pub fn degree_energies<T: Real>(&self, f: &SpectralField<T>) -> Result<Vec<f64>> {
        let means = self.group_means(f)?;
        let coeffs = self.degree_coefficients(&means);
        let mut out = vec![0.0; self.max_nodes];
        for s in &self.spheres {
            for d in 0..s.nodes {
                out[d] += coeffs[s.offset + d].norm_sqr();
            }
        }
        let vol = f.grid().volume().to64();
        Ok(out.into_iter().map(|e| e * vol).collect())
    }

    /// `Σ_{a<b} ‖Ω_ab f‖_2 / ‖f‖_2` for axisymmetric `f`.
    ///
    /// On axisymmetric data `Ω_12 f = 0` and `Ω_13 f`, `Ω_23 f` have equal norms;
    /// `Σ_{a<b} ‖Ω_ab g‖^2 = n(n+1)‖g‖^2` for degree `n` gives the sum
    /// `√2 (Σ n(n+1) ‖Π_n f‖^2)^{1/2}`.
    pub fn bernstein_ratio<T: Real>(&self, f: &SpectralField<T>) -> Result<f64> {
        let e = self.degree_energies(f)?;
        let total: f64 = e.iter().sum();
        if total == 0.0 {
            return Ok(0.0);
        }
        let weighted: f64 = e.iter().enumerate().map(|(n, v)| (n * (n + 1)) as f64 * v).sum();
        Ok((2.0 * weighted / total).sqrt())
    }

    /// Relative azimuthal variance of `f` (0 for exactly axisymmetric data).
    pub fn azimuthal_defect<T: Real>(&self, f: &SpectralField<T>) -> Result<f64> {
        self.check_grid(f)?;
        let groups = self.group_count.len();
        let mut sums = vec![Complex::new(0.0, 0.0); groups];
        for (c, &g) in f.coeffs().iter().zip(&self.group_of) {
            if g != NO_GROUP {
                sums[g as usize] += Complex::new(c.re.to64(), c.im.to64());
            }
        }
        let mut var = 0.0;
        let mut total = 0.0;
        for (c, &g) in f.coeffs().iter().zip(&self.group_of) {
            if g != NO_GROUP {
                let c = Complex::new(c.re.to64(), c.im.to64());
                var += (c - sums[g as usize] / self.group_count[g as usize] as f64).norm_sqr();
                total += c.norm_sqr();
            }
        }
        Ok(if total == 0.0 { 0.0 } else { var / total })
    }
}

fn split_by_sphere<'a, V>(data: &'a mut [V], spheres: &[Sphere]) -> Vec<&'a mut [V]> {
    let mut rest = data;
    let mut out = Vec::with_capacity(spheres.len());
    for s in spheres {
        let (head, tail) = rest.split_at_mut(s.nodes);
        out.push(head);
        rest = tail;
    }
    out
}

/// Orthonormal polynomial vectors for the discrete measure `Σ w_i δ_{μ_i}`:
/// Lanczos on `diag(μ)` started from `√w`, with full reorthogonalization.
fn lanczos_basis(mu: &[f64], sqrt_weight: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let norm = sqrt_weight.iter().map(|v| v * v).sum::<f64>().sqrt();
    cols.push(sqrt_weight.iter().map(|v| v / norm).collect());
    while cols.len() < n {
        let last = cols.last().unwrap();
        let mut v: Vec<f64> = last.iter().zip(mu).map(|(q, m)| q * m).collect();
        for _ in 0..2 {
            for q in &cols {
                let dot: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, a) in v.iter_mut().zip(q) {
                    *x -= dot * a;
                }
            }
        }
        let beta = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // Distinct nodes keep the Krylov space full; beta cannot vanish before n steps.
        assert!(beta > 0.0, "degenerate angular nodes");
        cols.push(v.into_iter().map(|x| x / beta).collect());
    }
    let mut basis = vec![0.0; n * n];
    for (d, col) in cols.iter().enumerate() {
        for i in 0..n {
            basis[i * n + d] = col[i];
        }
    }
    basis
}
