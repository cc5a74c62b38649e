//! Quadratic terms of the `(A, C)` system.
//!
//! With `T_ab` the dealiased transform of `u_a u_b` and `ε^{12} = 1`:
//!
//! ```text
//! N_A = (1/|ξ_h|) Σ ξ_j ξ_n ε^{jk} T_nk + (Λ|ξ|/|ξ_h|) Σ ε^{jk} ξ_j T_3k
//! N_C = -(|ξ|/|ξ_h|)(1 - 2Λ²) Σ iξ_j T_3j
//!       - iΛ|ξ|√(1-Λ²) (T_33 - Σ ξ_j ξ_k T_jk / |ξ_h|²)
//! ```
//!
//! with all indices horizontal. This is the projection of `-(u·∇)u` onto the
//! `(A, C)` coordinates; [`nonlinearity_from_velocity`] computes the same thing
//! through the Leray projector as an independent route.

use num_complex::Complex;
use rayon::prelude::*;

use nsc_spectral::{czero, leray_project, Real, SpectralField, VectorField};

use crate::dispersive::lambda;

/// Dealiased product transforms `T_ab`, `a ≤ b`, in the order 11, 12, 13, 22, 23, 33.
pub struct Products<T: Real> {
    pub t: [SpectralField<T>; 6],
}

impl<T: Real> Products<T> {
    pub fn get(&self, a: usize, b: usize) -> &SpectralField<T> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let slot = match (a, b) {
            (0, 0) => 0,
            (0, 1) => 1,
            (0, 2) => 2,
            (1, 1) => 3,
            (1, 2) => 4,
            (2, 2) => 5,
            _ => unreachable!("component index out of range"),
        };
        &self.t[slot]
    }
}

/// Pseudo-spectral products with the two-thirds rule on inputs and outputs.
pub fn dealiased_products<T: Real>(u: &VectorField<T>) -> Products<T> {
    let grid = u[0].grid();
    let phys: Vec<Vec<Complex<T>>> = u
        .par_iter()
        .map(|c| {
            let mut c = c.clone();
            c.dealias();
            c.to_physical()
        })
        .collect();
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let t: Vec<SpectralField<T>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let prod: Vec<Complex<T>> = phys[a].iter().zip(&phys[b]).map(|(x, y)| *x * *y).collect();
            let mut f = SpectralField::from_physical(grid, prod);
            f.dealias();
            f
        })
        .collect();
    Products { t: t.try_into().unwrap_or_else(|_| unreachable!()) }
}

/// `(N_A, N_C)` from given product transforms.
pub fn nonlinearity_from_products<T: Real>(p: &Products<T>) -> (SpectralField<T>, SpectralField<T>) {
    let grid = p.t[0].grid();
    let i = Complex::new(T::zero(), T::one());
    let mut na = vec![czero(); grid.len()];
    let mut nc = vec![czero(); grid.len()];
    na.par_iter_mut().zip(nc.par_iter_mut()).enumerate().for_each(|(idx, (a_out, c_out))| {
        if grid.is_nyquist(idx) {
            return;
        }
        let xi = grid.wavevector(idx);
        let h2 = xi[0] * xi[0] + xi[1] * xi[1];
        if h2 == T::zero() {
            return;
        }
        let h = h2.sqrt();
        let r = (h2 + xi[2] * xi[2]).sqrt();
        let lam = lambda(xi);
        let t = |a: usize, b: usize| p.get(a, b).coeffs()[idx];
        // Σ ε^{jk} ξ_j T_nk for n horizontal: ε^{12} = 1, ε^{21} = -1.
        let curl_row = |n: usize| t(n, 1) * xi[0] - t(n, 0) * xi[1];
        let a_val = (curl_row(0) * xi[0] + curl_row(1) * xi[1]) / h + curl_row(2) * (lam * r / h);
        let div3 = (t(2, 0) * xi[0] + t(2, 1) * xi[1]) * i;
        let hh = t(0, 0) * (xi[0] * xi[0]) + t(0, 1) * (xi[0] * xi[1] + xi[0] * xi[1]) + t(1, 1) * (xi[1] * xi[1]);
        let c_val =
            -div3 * (r / h * (T::one() - lam * lam * T::lit(2.0))) - i * (lam * r * (h / r)) * (t(2, 2) - hh / h2);
        *a_out = a_val;
        *c_out = c_val;
    });
    (
        SpectralField::from_coeffs(grid, na).expect("grid length"),
        SpectralField::from_coeffs(grid, nc).expect("grid length"),
    )
}

/// Right-hand sides `(N_A, N_C)` of the `(A, C)` equations.
pub fn nonlinearity_ac<T: Real>(u: &VectorField<T>) -> (SpectralField<T>, SpectralField<T>) {
    nonlinearity_from_products(&dealiased_products(u))
}

/// `(N₊, N₋) = (N_A + N_C, N_A - N_C)`.
pub fn nonlinearity_pm<T: Real>(u: &VectorField<T>) -> (SpectralField<T>, SpectralField<T>) {
    let (a, c) = nonlinearity_ac(u);
    (a.add(&c), a.sub(&c))
}

/// Dealiased convective term `div(u ⊗ u)` in Fourier space.
pub fn convective_term<T: Real>(u: &VectorField<T>) -> VectorField<T> {
    convective_from_products(&dealiased_products(u))
}

pub fn convective_from_products<T: Real>(p: &Products<T>) -> VectorField<T> {
    let d = |f: &SpectralField<T>, b: usize| f.apply_multiplier(|xi| Complex::new(T::zero(), xi[b]));
    let comp = |a: usize| d(p.get(a, 0), 0).add(&d(p.get(a, 1), 1)).add(&d(p.get(a, 2), 2));
    [comp(0), comp(1), comp(2)]
}

/// `(N_A, N_C)` through the velocity equation: with `B = div(u ⊗ u)`,
/// `N_A = -|∇_h|^{-1} curl_h B` and `N_C = -(|ξ|/|ξ_h|)(ℙB)_3`.
pub fn nonlinearity_from_velocity<T: Real>(u: &VectorField<T>) -> (SpectralField<T>, SpectralField<T>) {
    let b = leray_project(&convective_term(u));
    let grid = b[0].grid();
    let mut na = SpectralField::zeros(grid);
    let mut nc = SpectralField::zeros(grid);
    for idx in 0..grid.len() {
        let xi = grid.wavevector(idx);
        let h = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        if h == T::zero() || grid.is_nyquist(idx) {
            continue;
        }
        let r = (h * h + xi[2] * xi[2]).sqrt();
        let curl = (b[1].coeffs()[idx] * xi[0] - b[0].coeffs()[idx] * xi[1]) * Complex::new(T::zero(), T::one());
        na.coeffs_mut()[idx] = -curl / h;
        nc.coeffs_mut()[idx] = -b[2].coeffs()[idx] * (r / h);
    }
    (na, nc)
}
