use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, SpectralError};
use crate::Real;

pub const MIN_MODES: usize = 4;
pub const MAX_MODES: usize = 1024;

struct Plans<T: Real> {
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

/// Periodic box `[-πL, πL)^3` sampled with `n` points per axis.
///
/// Coefficients are stored in FFT order: array index `i` carries the integer
/// frequency `j = i` for `i < n/2` and `j = i - n` otherwise, so `i = n/2` is
/// the Nyquist row `j = -n/2`. The physical frequency is `ξ = j / L`.
#[derive(Clone)]
pub struct Grid<T: Real> {
    n: usize,
    box_scale: T,
    plans: Arc<Plans<T>>,
}

impl<T: Real> fmt::Debug for Grid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n", &self.n).field("box_scale", &self.box_scale).finish()
    }
}

impl<T: Real> PartialEq for Grid<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.box_scale == other.box_scale
    }
}

/// Builds a grid, rejecting odd or out-of-range mode counts.
pub fn make_grid<T: Real>(n: usize, box_scale: T) -> Result<Grid<T>> {
    Grid::new(n, box_scale)
}

impl<T: Real> Grid<T> {
    pub fn new(n: usize, box_scale: T) -> Result<Self> {
        if n % 2 != 0 {
            return Err(SpectralError::InvalidGrid("n must be even".into()));
        }
        if !(MIN_MODES..=MAX_MODES).contains(&n) {
            return Err(SpectralError::InvalidGrid(format!("n must lie in [{MIN_MODES}, {MAX_MODES}], got {n}")));
        }
        if !(box_scale > T::zero()) || !box_scale.is_finite() {
            return Err(SpectralError::InvalidGrid("box_scale must be positive".into()));
        }
        let mut planner = FftPlanner::new();
        let plans = Plans { forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) };
        Ok(Self { n, box_scale, plans: Arc::new(plans) })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn box_scale(&self) -> T {
        self.box_scale
    }

    /// Number of modes, `n^3`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical grid spacing `2πL/n`.
    pub fn spacing(&self) -> T {
        T::TAU() * self.box_scale / T::lit(self.n as f64)
    }

    /// Frequency spacing `1/L`.
    pub fn xi_spacing(&self) -> T {
        T::one() / self.box_scale
    }

    /// Box volume `(2πL)^3`.
    pub fn volume(&self) -> T {
        (T::TAU() * self.box_scale).powi(3)
    }

    /// Largest `|ξ|` on the grid (corner of the cube, Nyquist excluded).
    pub fn max_xi(&self) -> T {
        T::lit(3f64.sqrt() * (self.n / 2) as f64) / self.box_scale
    }

    /// Integer frequency of array index `i`.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Array index of integer frequency `j`, if it is on the grid.
    pub fn index_of_wavenumber(&self, j: i64) -> Option<usize> {
        let h = (self.n / 2) as i64;
        if j < -h || j >= h {
            return None;
        }
        Some(if j >= 0 { j as usize } else { (j + self.n as i64) as usize })
    }

    /// Centered physical coordinate of sample `m`.
    #[inline]
    pub fn coordinate(&self, m: usize) -> T {
        -T::PI() * self.box_scale + T::lit(m as f64) * self.spacing()
    }

    #[inline]
    pub fn index(&self, i0: usize, i1: usize, i2: usize) -> usize {
        (i0 * self.n + i1) * self.n + i2
    }

    #[inline]
    pub fn unravel(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    #[inline]
    pub fn wavenumbers(&self, idx: usize) -> [i64; 3] {
        let [a, b, c] = self.unravel(idx);
        [self.wavenumber(a), self.wavenumber(b), self.wavenumber(c)]
    }

    #[inline]
    pub fn wavevector(&self, idx: usize) -> [T; 3] {
        let j = self.wavenumbers(idx);
        let inv = self.xi_spacing();
        [T::lit(j[0] as f64) * inv, T::lit(j[1] as f64) * inv, T::lit(j[2] as f64) * inv]
    }

    #[inline]
    pub fn position(&self, idx: usize) -> [T; 3] {
        let [a, b, c] = self.unravel(idx);
        [self.coordinate(a), self.coordinate(b), self.coordinate(c)]
    }

    /// True if any axis sits on the Nyquist row `j = -n/2`.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let h = self.n / 2;
        let [a, b, c] = self.unravel(idx);
        a == h || b == h || c == h
    }

    /// Two-thirds rule cutoff: modes with every `|j_i| <= K` survive.
    pub fn dealias_cutoff(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }

    #[inline]
    pub fn is_dealiased(&self, idx: usize) -> bool {
        let k = self.dealias_cutoff();
        self.wavenumbers(idx).iter().all(|j| j.abs() <= k)
    }

    /// Index of the mode `-j`; `None` when `j` touches the Nyquist row.
    pub fn mirror(&self, idx: usize) -> Option<usize> {
        if self.is_nyquist(idx) {
            return None;
        }
        let [a, b, c] = self.unravel(idx);
        let n = self.n;
        Some(self.index((n - a) % n, (n - b) % n, (n - c) % n))
    }

    /// Coefficients to centered physical samples, in place.
    pub fn inverse_transform(&self, data: &mut [Complex<T>]) {
        assert_eq!(data.len(), self.len());
        self.checkerboard(data);
        self.transform(data, &self.plans.inverse);
    }

    /// Centered physical samples to coefficients, in place.
    pub fn forward_transform(&self, data: &mut [Complex<T>]) {
        assert_eq!(data.len(), self.len());
        self.transform(data, &self.plans.forward);
        let scale = T::one() / T::lit(self.len() as f64);
        data.par_iter_mut().for_each(|c| *c = *c * scale);
        self.checkerboard(data);
    }

    // The sample at x_m = -πL + m h picks up (-1)^j from the shift of origin.
    fn checkerboard(&self, data: &mut [Complex<T>]) {
        let n = self.n;
        data.par_chunks_mut(n).enumerate().for_each(|(row, chunk)| {
            let (a, b) = (row / n, row % n);
            let base = (a + b) % 2;
            for (c, v) in chunk.iter_mut().enumerate() {
                if (base + c) % 2 == 1 {
                    *v = -*v;
                }
            }
        });
    }

    fn transform(&self, data: &mut [Complex<T>], plan: &Arc<dyn Fft<T>>) {
        let n = self.n;
        let mut other = vec![Complex::new(T::zero(), T::zero()); data.len()];
        for _ in 0..3 {
            data.par_chunks_mut(n * n).for_each(|chunk| {
                let mut scratch = vec![Complex::new(T::zero(), T::zero()); plan.get_inplace_scratch_len()];
                plan.process_with_scratch(chunk, &mut scratch);
            });
            rotate_axes(data, &mut other, n);
            data.copy_from_slice(&other);
        }
    }
}

// out[(i1, i2, i0)] = in[(i0, i1, i2)], so three rotations restore the order.
fn rotate_axes<T: Real>(input: &[Complex<T>], out: &mut [Complex<T>], n: usize) {
    out.par_chunks_mut(n).enumerate().for_each(|(row, chunk)| {
        let (i1, i2) = (row / n, row % n);
        for (i0, v) in chunk.iter_mut().enumerate() {
            *v = input[(i0 * n + i1) * n + i2];
        }
    });
}
