use nsc_spectral::Real;

use crate::error::{LocalizationError, Result};

/// Legendre polynomial `L_n(x)` by the three-term recurrence.
pub fn legendre<T: Real>(n: usize, x: T) -> Result<T> {
    if !(x.abs() <= T::one()) {
        return Err(LocalizationError::Domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let (mut prev, mut cur) = (T::one(), x);
    if n == 0 {
        return Ok(prev);
    }
    for m in 1..n {
        let m = T::lit(m as f64);
        let next = ((m + m + T::one()) * x * cur - m * prev) / (m + T::one());
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Zonal kernel `(2n+1)/(4π) L_n(x)`.
pub fn legendre_zonal<T: Real>(n: usize, x: T) -> Result<T> {
    let scale = T::lit((2 * n + 1) as f64) / (T::lit(4.0) * T::PI());
    Ok(scale * legendre(n, x)?)
}
