//! Seeded random fields used by tests, oracles and the command line tool.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::curl;
use crate::field::{SpectralField, VectorField};
use crate::grid::Grid;
use crate::Real;

/// Parameters of a Gaussian-windowed random trigonometric field.
#[derive(Clone, Copy, Debug)]
pub struct WindowSpec {
    /// Width of the Gaussian window in physical units.
    pub sigma: f64,
    /// Largest wavenumber of the modulating waves.
    pub max_wavenumber: f64,
    /// Number of modulating waves.
    pub waves: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self { sigma: 3.0, max_wavenumber: 0.6, waves: 6 }
    }
}

/// Real field `exp(-|x|^2/2σ^2) Σ a_m cos(k_m·x + φ_m)`.
pub fn windowed_scalar<T: Real>(grid: &Grid<T>, spec: WindowSpec, seed: u64) -> SpectralField<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let waves: Vec<([f64; 3], f64, f64)> = (0..spec.waves)
        .map(|_| {
            let k = [
                rng.gen_range(-1.0..1.0) * spec.max_wavenumber,
                rng.gen_range(-1.0..1.0) * spec.max_wavenumber,
                rng.gen_range(-1.0..1.0) * spec.max_wavenumber,
            ];
            (k, rng.gen_range(-1.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    let s2 = 2.0 * spec.sigma * spec.sigma;
    SpectralField::from_real_fn(grid, |x| {
        let x = [x[0].to64(), x[1].to64(), x[2].to64()];
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let sum: f64 = waves.iter().map(|(k, a, ph)| a * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + ph).cos()).sum();
        T::lit((-r2 / s2).exp() * sum)
    })
}

pub fn windowed_vector<T: Real>(grid: &Grid<T>, spec: WindowSpec, seed: u64) -> VectorField<T> {
    [
        windowed_scalar(grid, spec, seed.wrapping_mul(3)),
        windowed_scalar(grid, spec, seed.wrapping_mul(3).wrapping_add(1)),
        windowed_scalar(grid, spec, seed.wrapping_mul(3).wrapping_add(2)),
    ]
}

/// Divergence-free windowed field: the curl of a windowed vector potential.
pub fn windowed_solenoidal<T: Real>(grid: &Grid<T>, spec: WindowSpec, seed: u64) -> VectorField<T> {
    curl(&windowed_vector(grid, spec, seed))
}

/// Real random coefficients with `|j_i| <= max_j`, Hermitian symmetric, mean-free.
pub fn random_band_limited<T: Real>(grid: &Grid<T>, max_j: i64, seed: u64) -> SpectralField<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); grid.len()];
    for idx in 0..grid.len() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let j = grid.wavenumbers(idx);
        if j.iter().any(|v| v.abs() > max_j) || j == [0, 0, 0] {
            continue;
        }
        coeffs[idx] = Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)));
    }
    SpectralField::from_coeffs(grid, coeffs).expect("length matches").real_part()
}
