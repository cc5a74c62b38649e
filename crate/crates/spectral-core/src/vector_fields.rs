//! Coordinate-weighted vector fields `S` (scaling) and `Ω` (rotation about `e_3`).
//!
//! Both multiply by the centered coordinate `x`, which is not periodic, so the
//! input has to be concentrated away from the box boundary. Every result carries
//! the fraction of `L^2` mass found in the outer quarter of the box.

use num_complex::Complex;

use crate::calculus::partial;
use crate::field::{SpectralField, VectorField};
use crate::grid::Grid;
use crate::Real;

/// Largest acceptable fraction of `L^2` mass in the outer quarter shell.
pub const OUTER_MASS_LIMIT: f64 = 0.01;

/// Points with some `|x_i| > OUTER_SHELL_START · πL` form the outer quarter.
pub const OUTER_SHELL_START: f64 = 0.75;

/// Result of a coordinate-weighted operation together with its window check.
#[derive(Clone, Debug)]
pub struct Windowed<V> {
    pub value: V,
    pub outer_mass_fraction: f64,
}

impl<V> Windowed<V> {
    pub fn window_ok(&self) -> bool {
        self.outer_mass_fraction <= OUTER_MASS_LIMIT
    }

    pub fn into_value(self) -> V {
        self.value
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> Windowed<W> {
        Windowed { value: f(self.value), outer_mass_fraction: self.outer_mass_fraction }
    }
}

/// Mixing term used by the vector form of `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OmegaConvention {
    /// `Ω𝐯 = (x_1∂_2 - x_2∂_1)𝐯 - 𝐯`, as written in the source.
    #[default]
    SubtractIdentity,
    /// `Ω𝐯 = (x_1∂_2 - x_2∂_1)𝐯 - e_3 × 𝐯`, the generator of rotations acting on vectors.
    SubtractRotation,
}

fn outer_fraction_of<T: Real>(grid: &Grid<T>, samples: &[&[Complex<T>]]) -> f64 {
    let limit = T::lit(OUTER_SHELL_START) * T::PI() * grid.box_scale();
    let n = grid.n();
    let outer: Vec<bool> = (0..n).map(|m| grid.coordinate(m).abs() > limit).collect();
    let mut total = 0.0;
    let mut shell = 0.0;
    for values in samples {
        for (idx, v) in values.iter().enumerate() {
            let [a, b, c] = grid.unravel(idx);
            let w = v.norm_sqr().to64();
            total += w;
            if outer[a] || outer[b] || outer[c] {
                shell += w;
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        shell / total
    }
}

/// Fraction of `L^2` mass of the given fields lying in the outer quarter shell.
pub fn outer_mass_fraction<T: Real>(fields: &[&SpectralField<T>]) -> f64 {
    if fields.is_empty() {
        return 0.0;
    }
    let samples: Vec<Vec<Complex<T>>> = fields.iter().map(|f| f.to_physical()).collect();
    let refs: Vec<&[Complex<T>]> = samples.iter().map(|s| s.as_slice()).collect();
    outer_fraction_of(fields[0].grid(), &refs)
}

fn report(fraction: f64, what: &str) {
    if fraction > OUTER_MASS_LIMIT {
        log::warn!(
            "{what}: {:.3e} of the L2 mass lies in the outer quarter of the box (limit {OUTER_MASS_LIMIT})",
            fraction
        );
    }
}

// Σ_j w_j(x) ∂_j f(x) in physical space, with w given per grid point.
fn weighted_derivative<T: Real>(f: &SpectralField<T>, weights: [Option<(usize, T)>; 3]) -> Vec<Complex<T>> {
    let grid = f.grid();
    let mut acc = vec![Complex::new(T::zero(), T::zero()); grid.len()];
    for (axis, weight) in weights.iter().enumerate() {
        let Some((coord_axis, sign)) = *weight else { continue };
        let d = partial(f, axis).to_physical();
        for (idx, (a, v)) in acc.iter_mut().zip(d.iter()).enumerate() {
            let x = grid.position(idx)[coord_axis];
            *a = *a + *v * (x * sign);
        }
    }
    acc
}

fn euler_samples<T: Real>(f: &SpectralField<T>) -> Vec<Complex<T>> {
    let one = T::one();
    weighted_derivative(f, [Some((0, one)), Some((1, one)), Some((2, one))])
}

fn rotation_samples<T: Real>(f: &SpectralField<T>) -> Vec<Complex<T>> {
    let one = T::one();
    weighted_derivative(f, [Some((1, -one)), Some((0, one)), None])
}

fn finish<T: Real>(grid: &Grid<T>, samples: Vec<Complex<T>>, shift: &SpectralField<T>, c: T) -> SpectralField<T> {
    SpectralField::from_physical(grid, samples).axpy(c, shift)
}

/// Scalar scaling field `Sf = x·∇f - 2f`.
pub fn s_scalar<T: Real>(f: &SpectralField<T>) -> Windowed<SpectralField<T>> {
    let fraction = outer_mass_fraction(&[f]);
    report(fraction, "S (scalar)");
    let value = finish(f.grid(), euler_samples(f), f, T::lit(-2.0));
    Windowed { value, outer_mass_fraction: fraction }
}

/// Vector scaling field `S𝐯 = (x·∇)𝐯 - 𝐯`.
pub fn s_vector<T: Real>(v: &VectorField<T>) -> Windowed<VectorField<T>> {
    let fraction = outer_mass_fraction(&[&v[0], &v[1], &v[2]]);
    report(fraction, "S (vector)");
    let grid = v[0].grid();
    let m = -T::one();
    let value = [
        finish(grid, euler_samples(&v[0]), &v[0], m),
        finish(grid, euler_samples(&v[1]), &v[1], m),
        finish(grid, euler_samples(&v[2]), &v[2], m),
    ];
    Windowed { value, outer_mass_fraction: fraction }
}

/// Applies `S` to a scalar field `times` times.
pub fn s_scalar_power<T: Real>(f: &SpectralField<T>, times: usize) -> Windowed<SpectralField<T>> {
    let mut out = Windowed { value: f.clone(), outer_mass_fraction: outer_mass_fraction(&[f]) };
    for _ in 0..times {
        let next = s_scalar(&out.value);
        out =
            Windowed { outer_mass_fraction: out.outer_mass_fraction.max(next.outer_mass_fraction), value: next.value };
    }
    out
}

pub fn s_vector_power<T: Real>(v: &VectorField<T>, times: usize) -> Windowed<VectorField<T>> {
    let mut out = Windowed { value: v.clone(), outer_mass_fraction: outer_mass_fraction(&[&v[0], &v[1], &v[2]]) };
    for _ in 0..times {
        let next = s_vector(&out.value);
        out =
            Windowed { outer_mass_fraction: out.outer_mass_fraction.max(next.outer_mass_fraction), value: next.value };
    }
    out
}

/// Scalar rotation field `Ωf = (x_1∂_2 - x_2∂_1)f`.
pub fn omega_scalar<T: Real>(f: &SpectralField<T>) -> Windowed<SpectralField<T>> {
    let fraction = outer_mass_fraction(&[f]);
    report(fraction, "Omega (scalar)");
    let value = SpectralField::from_physical(f.grid(), rotation_samples(f));
    Windowed { value, outer_mass_fraction: fraction }
}

/// Vector rotation field with the chosen mixing term.
pub fn omega_vector<T: Real>(v: &VectorField<T>, convention: OmegaConvention) -> Windowed<VectorField<T>> {
    let fraction = outer_mass_fraction(&[&v[0], &v[1], &v[2]]);
    report(fraction, "Omega (vector)");
    let grid = v[0].grid();
    let rot = [
        SpectralField::from_physical(grid, rotation_samples(&v[0])),
        SpectralField::from_physical(grid, rotation_samples(&v[1])),
        SpectralField::from_physical(grid, rotation_samples(&v[2])),
    ];
    let value = match convention {
        OmegaConvention::SubtractIdentity => [rot[0].sub(&v[0]), rot[1].sub(&v[1]), rot[2].sub(&v[2])],
        OmegaConvention::SubtractRotation => [rot[0].add(&v[1]), rot[1].sub(&v[0]), rot[2].clone()],
    };
    Windowed { value, outer_mass_fraction: fraction }
}
