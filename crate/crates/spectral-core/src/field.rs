use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Result, SpectralError};
use crate::grid::Grid;
use crate::Real;

/// One complex scalar field stored as Fourier coefficients.
///
/// The coefficient `c(ξ)` is taken relative to the centered box, so the
/// physical field is `f(x) = Σ c(ξ) e^{iξ·x}` for `x ∈ [-πL, πL)^3`.
#[derive(Clone, Debug)]
pub struct SpectralField<T: Real> {
    grid: Grid<T>,
    coeffs: Vec<Complex<T>>,
}

#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Real> SpectralField<T> {
    pub fn zeros(grid: &Grid<T>) -> Self {
        Self { grid: grid.clone(), coeffs: vec![czero(); grid.len()] }
    }

    pub fn from_coeffs(grid: &Grid<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(SpectralError::BadLength { expected: grid.len(), found: coeffs.len() });
        }
        let mut f = Self { grid: grid.clone(), coeffs };
        f.zero_nyquist();
        Ok(f)
    }

    /// Builds coefficients mode by mode from `(j, ξ)`; Nyquist rows stay zero.
    pub fn from_fourier_fn<F>(grid: &Grid<T>, f: F) -> Self
    where
        F: Fn([i64; 3], [T; 3]) -> Complex<T> + Sync,
    {
        let coeffs = (0..grid.len())
            .into_par_iter()
            .map(|idx| if grid.is_nyquist(idx) { czero() } else { f(grid.wavenumbers(idx), grid.wavevector(idx)) })
            .collect();
        Self { grid: grid.clone(), coeffs }
    }

    /// Samples a physical function on the centered grid and transforms it.
    pub fn from_physical_fn<F>(grid: &Grid<T>, f: F) -> Self
    where
        F: Fn([T; 3]) -> Complex<T> + Sync,
    {
        let values: Vec<Complex<T>> = (0..grid.len()).into_par_iter().map(|idx| f(grid.position(idx))).collect();
        Self::from_physical(grid, values)
    }

    pub fn from_real_fn<F>(grid: &Grid<T>, f: F) -> Self
    where
        F: Fn([T; 3]) -> T + Sync,
    {
        Self::from_physical_fn(grid, |x| Complex::new(f(x), T::zero()))
    }

    /// Forward transform of physical samples; Nyquist rows are zeroed.
    pub fn from_physical(grid: &Grid<T>, mut values: Vec<Complex<T>>) -> Self {
        assert_eq!(values.len(), grid.len(), "sample count does not match grid");
        grid.forward_transform(&mut values);
        let mut f = Self { grid: grid.clone(), coeffs: values };
        f.zero_nyquist();
        f
    }

    /// Physical samples at the centered grid points.
    pub fn to_physical(&self) -> Vec<Complex<T>> {
        let mut data = self.coeffs.clone();
        self.grid.inverse_transform(&mut data);
        data
    }

    #[inline]
    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(SpectralError::GridMismatch { expected: self.grid.n(), found: other.grid.n() });
        }
        Ok(())
    }

    pub fn zero_nyquist(&mut self) {
        let grid = &self.grid;
        self.coeffs.par_iter_mut().enumerate().for_each(|(idx, c)| {
            if grid.is_nyquist(idx) {
                *c = czero();
            }
        });
    }

    pub fn remove_mean(&mut self) {
        self.coeffs[0] = czero();
    }

    /// Two-thirds rule truncation (also clears Nyquist rows).
    pub fn dealias(&mut self) {
        let grid = &self.grid;
        self.coeffs.par_iter_mut().enumerate().for_each(|(idx, c)| {
            if !grid.is_dealiased(idx) {
                *c = czero();
            }
        });
    }

    /// Pointwise Fourier multiplier `m(ξ)`; Nyquist rows are zeroed.
    pub fn apply_multiplier<F>(&self, m: F) -> Self
    where
        F: Fn([T; 3]) -> Complex<T> + Sync,
    {
        let grid = &self.grid;
        let coeffs = self
            .coeffs
            .par_iter()
            .enumerate()
            .map(|(idx, c)| if grid.is_nyquist(idx) { czero() } else { *c * m(grid.wavevector(idx)) })
            .collect();
        Self { grid: grid.clone(), coeffs }
    }

    /// Real multiplier variant of [`apply_multiplier`](Self::apply_multiplier).
    pub fn apply_real_multiplier<F>(&self, m: F) -> Self
    where
        F: Fn([T; 3]) -> T + Sync,
    {
        self.apply_multiplier(|xi| Complex::new(m(xi), T::zero()))
    }

    pub fn scale(&self, a: T) -> Self {
        self.scale_complex(Complex::new(a, T::zero()))
    }

    pub fn scale_complex(&self, a: Complex<T>) -> Self {
        Self { grid: self.grid.clone(), coeffs: self.coeffs.par_iter().map(|c| *c * a).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: T, other: &Self) -> Self {
        self.zip(other, |x, y| x + y * a)
    }

    pub fn zip<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(Complex<T>, Complex<T>) -> Complex<T> + Sync,
    {
        assert!(self.grid == other.grid, "fields live on different grids");
        let coeffs = self.coeffs.par_iter().zip(other.coeffs.par_iter()).map(|(a, b)| f(*a, *b)).collect();
        Self { grid: self.grid.clone(), coeffs }
    }

    /// `Σ |c|^2` over coefficients.
    pub fn coeff_norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Physical `L^2` norm via Parseval: `(2πL)^{3/2} (Σ|c|^2)^{1/2}`.
    pub fn l2_norm(&self) -> T {
        (self.grid.volume() * self.coeff_norm_sqr()).sqrt()
    }

    /// `∫ f conj(g) dx` over the box.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert!(self.grid == other.grid, "fields live on different grids");
        let s: Complex<T> =
            self.coeffs.iter().zip(other.coeffs.iter()).fold(czero(), |acc, (a, b)| acc + *a * b.conj());
        s * self.grid.volume()
    }

    /// Largest modulus over the physical grid points.
    pub fn sup_norm(&self) -> T {
        self.to_physical().iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Relative violation of `c(-ξ) = conj(c(ξ))`.
    pub fn hermitian_defect(&self) -> T {
        let grid = &self.grid;
        let mut num = T::zero();
        let mut den = T::zero();
        for idx in 0..grid.len() {
            if let Some(m) = grid.mirror(idx) {
                num = num + (self.coeffs[m] - self.coeffs[idx].conj()).norm_sqr();
                den = den + self.coeffs[idx].norm_sqr();
            }
        }
        if den == T::zero() {
            T::zero()
        } else {
            (num / den).sqrt()
        }
    }

    /// Keeps only the real part of the physical field.
    pub fn real_part(&self) -> Self {
        let grid = &self.grid;
        let coeffs: Vec<Complex<T>> = (0..grid.len())
            .into_par_iter()
            .map(|idx| match grid.mirror(idx) {
                Some(m) => (self.coeffs[idx] + self.coeffs[m].conj()) * T::lit(0.5),
                None => czero(),
            })
            .collect();
        Self { grid: grid.clone(), coeffs }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Three spectral components of a velocity field.
pub type VectorField<T> = [SpectralField<T>; 3];

/// Velocity at time `t` for viscosity `kappa`.
#[derive(Clone, Debug)]
pub struct VelocityState<T: Real> {
    pub u: VectorField<T>,
    pub t: T,
    pub kappa: T,
}

impl<T: Real> VelocityState<T> {
    pub fn new(u: VectorField<T>, t: T, kappa: T) -> Self {
        Self { u, t, kappa }
    }

    pub fn zeros(grid: &Grid<T>, t: T, kappa: T) -> Self {
        Self { u: vector_zeros(grid), t, kappa }
    }

    pub fn grid(&self) -> &Grid<T> {
        self.u[0].grid()
    }

    pub fn l2_norm(&self) -> T {
        vector_l2_norm(&self.u)
    }
}

pub fn vector_zeros<T: Real>(grid: &Grid<T>) -> VectorField<T> {
    [SpectralField::zeros(grid), SpectralField::zeros(grid), SpectralField::zeros(grid)]
}

pub fn vector_l2_norm<T: Real>(u: &VectorField<T>) -> T {
    u.iter().map(|c| c.l2_norm().powi(2)).sum::<T>().sqrt()
}

pub fn vector_inner<T: Real>(u: &VectorField<T>, v: &VectorField<T>) -> Complex<T> {
    u.iter().zip(v.iter()).fold(czero(), |acc, (a, b)| acc + a.inner(b))
}

pub fn vector_map<T: Real, F>(u: &VectorField<T>, f: F) -> VectorField<T>
where
    F: Fn(&SpectralField<T>) -> SpectralField<T>,
{
    [f(&u[0]), f(&u[1]), f(&u[2])]
}

pub fn vector_zip<T: Real, F>(u: &VectorField<T>, v: &VectorField<T>, f: F) -> VectorField<T>
where
    F: Fn(&SpectralField<T>, &SpectralField<T>) -> SpectralField<T>,
{
    [f(&u[0], &v[0]), f(&u[1], &v[1]), f(&u[2], &v[2])]
}
