use num_complex::Complex;

use nsc_spectral::{Real, SpectralField};
use nsc_unknowns::{lambda, Sign};

/// `e^{-κt|ξ|^2}`.
pub fn heat_factor<T: Real>(xi: [T; 3], t: T, kappa: T) -> T {
    let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    (-kappa * t * r2).exp()
}

/// `f ↦ e^{±itΛ(ξ) - κt|ξ|^2} f̂`.
pub fn evolve_linear<T: Real>(f: &SpectralField<T>, t: T, sign: Sign, kappa: T) -> SpectralField<T> {
    let s = sign.value::<T>();
    f.apply_multiplier(|xi| {
        let phase = s * t * lambda(xi);
        Complex::new(phase.cos(), phase.sin()) * heat_factor(xi, t, kappa)
    })
}
