//! The cutoff `ψ` and the annulus bump `φ(x) = ψ(x) - ψ(2x)`.

use nsc_spectral::Real;

/// Even cutoff: 1 on `[-1, 1]`, 0 outside `[-2, 2]`, and `exp(1 - 1/(1 - s^2))`
/// with `s = |x| - 1` on the ramp.
///
/// The ramp matches the plateau only to first order at `|x| = 1`, which is
/// harmless for partitions of unity (they telescope exactly).
pub fn psi<T: Real>(x: T) -> T {
    let a = x.abs();
    if a <= T::one() {
        return T::one();
    }
    if a >= T::lit(2.0) {
        return T::zero();
    }
    let s = a - T::one();
    (T::one() - T::one() / (T::one() - s * s)).exp()
}

pub fn varphi<T: Real>(x: T) -> T {
    psi(x) - psi(x + x)
}

/// `φ(2^{-k} x)`.
pub fn dyadic<T: Real>(x: T, k: i32) -> T {
    varphi(x * T::lit(2f64.powi(-k)))
}

/// `ψ(2^{-k} x)`.
pub fn dyadic_cap<T: Real>(x: T, k: i32) -> T {
    psi(x * T::lit(2f64.powi(-k)))
}
