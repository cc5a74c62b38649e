use num_complex::Complex;

use crate::field::{czero, vector_map, SpectralField, VectorField};
use crate::Real;

#[inline]
pub fn norm3<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[inline]
pub fn horizontal_norm<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

/// Spectral partial derivative `∂_j ↔ iξ_j`.
pub fn partial<T: Real>(f: &SpectralField<T>, axis: usize) -> SpectralField<T> {
    f.apply_multiplier(|xi| Complex::new(T::zero(), xi[axis]))
}

pub fn gradient<T: Real>(f: &SpectralField<T>) -> VectorField<T> {
    [partial(f, 0), partial(f, 1), partial(f, 2)]
}

pub fn divergence<T: Real>(u: &VectorField<T>) -> SpectralField<T> {
    partial(&u[0], 0).add(&partial(&u[1], 1)).add(&partial(&u[2], 2))
}

pub fn laplacian<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    f.apply_real_multiplier(|xi| -(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]))
}

/// `‖div u‖ / ‖∇u‖`, zero for the zero field.
pub fn divergence_residual<T: Real>(u: &VectorField<T>) -> T {
    let div = divergence(u).coeff_norm_sqr();
    let grad: T = u.iter().map(|c| c.apply_real_multiplier(norm3).coeff_norm_sqr()).sum();
    if grad == T::zero() {
        T::zero()
    } else {
        (div / grad).sqrt()
    }
}

/// Helmholtz–Leray projection `û - ξ(ξ·û)/|ξ|^2`; the zero mode is left alone.
pub fn leray_project<T: Real>(u: &VectorField<T>) -> VectorField<T> {
    let grid = u[0].grid();
    let mut out = [u[0].clone(), u[1].clone(), u[2].clone()];
    for idx in 0..grid.len() {
        if grid.is_nyquist(idx) {
            for c in out.iter_mut() {
                c.coeffs_mut()[idx] = czero();
            }
            continue;
        }
        let xi = grid.wavevector(idx);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == T::zero() {
            continue;
        }
        let dot = u[0].coeffs()[idx] * xi[0] + u[1].coeffs()[idx] * xi[1] + u[2].coeffs()[idx] * xi[2];
        for (a, c) in out.iter_mut().enumerate() {
            let v = c.coeffs()[idx] - dot * (xi[a] / r2);
            c.coeffs_mut()[idx] = v;
        }
    }
    out
}

/// Rotation term `e_3 × u = (-u_2, u_1, 0)`.
pub fn coriolis<T: Real>(u: &VectorField<T>) -> VectorField<T> {
    [u[1].scale(-T::one()), u[0].clone(), SpectralField::zeros(u[0].grid())]
}

pub fn curl<T: Real>(u: &VectorField<T>) -> VectorField<T> {
    [
        partial(&u[2], 1).sub(&partial(&u[1], 2)),
        partial(&u[0], 2).sub(&partial(&u[2], 0)),
        partial(&u[1], 0).sub(&partial(&u[0], 1)),
    ]
}

/// Grid sup of the Frobenius norm of `∇u`.
pub fn gradient_sup_norm<T: Real>(u: &VectorField<T>) -> T {
    let grid = u[0].grid();
    let mut acc = vec![T::zero(); grid.len()];
    for comp in u.iter() {
        for axis in 0..3 {
            let d = partial(comp, axis).to_physical();
            for (a, v) in acc.iter_mut().zip(d.iter()) {
                *a = *a + v.norm_sqr();
            }
        }
    }
    acc.into_iter().fold(T::zero(), T::max).sqrt()
}

/// Homogeneous Sobolev seminorm `‖|∇|^s f‖_2`.
pub fn homogeneous_sobolev_norm<T: Real>(f: &SpectralField<T>, s: T) -> T {
    let grid = f.grid();
    let mut acc = T::zero();
    for (idx, c) in f.coeffs().iter().enumerate() {
        let r = norm3(grid.wavevector(idx));
        if r > T::zero() {
            acc = acc + r.powf(s + s) * c.norm_sqr();
        }
    }
    (grid.volume() * acc).sqrt()
}

/// Inhomogeneous `H^m` norm with weight `(1 + |ξ|^2)^m`.
pub fn sobolev_norm<T: Real>(f: &SpectralField<T>, m: i32) -> T {
    let grid = f.grid();
    let acc: T = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let xi = grid.wavevector(idx);
            (T::one() + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).powi(m) * c.norm_sqr()
        })
        .sum();
    (grid.volume() * acc).sqrt()
}

pub fn vector_sobolev_norm<T: Real>(u: &VectorField<T>, m: i32) -> T {
    u.iter().map(|c| sobolev_norm(c, m).powi(2)).sum::<T>().sqrt()
}

/// `‖∇u‖_2` for a vector field.
pub fn vector_gradient_norm<T: Real>(u: &VectorField<T>) -> T {
    u.iter().map(|c| homogeneous_sobolev_norm(c, T::one()).powi(2)).sum::<T>().sqrt()
}

pub fn vector_laplacian<T: Real>(u: &VectorField<T>) -> VectorField<T> {
    vector_map(u, laplacian)
}
