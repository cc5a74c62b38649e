//! Axisymmetric initial data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsc_localization::LocalizationError;
use nsc_norms::{b_norm, x_norm, NormContext, NormError};
use nsc_spectral::samples::random_band_limited;
use nsc_spectral::{curl, czero, leray_project, Grid, Real, SpectralField, VectorField, VelocityState};
use nsc_unknowns::{clear_axis, velocity_to_profiles};

use crate::config::{InitFamily, InitSpec};
use crate::error::{Result, SolverError};
use crate::run::velocity_sup;

#[derive(Clone, Copy, Debug)]
struct Ring {
    radius: f64,
    height: f64,
    width: f64,
    amplitude: f64,
}

impl Ring {
    /// A Gaussian blob of width `w` averaged around the circle of radius `r_0`
    /// at height `h`: `exp(-(r² + r_0² + (z-h)²)/2w²) I_0(r r_0/w²)`. It depends
    /// on `r²` only, so it is smooth on the axis, and its transform is a
    /// Gaussian times a Bessel function, so it is well resolved.
    fn profile(&self, r2: f64, z: f64) -> f64 {
        let w2 = self.width * self.width;
        let dz = z - self.height;
        let a = (r2 + self.radius * self.radius + dz * dz) / (2.0 * w2);
        self.amplitude * scaled_bessel_i0(r2.sqrt() * self.radius / w2, a)
    }
}

/// `e^{-a} I_0(x)` from the power series, summed in the log domain so that
/// neither factor overflows.
fn scaled_bessel_i0(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        return (-a).exp();
    }
    let lx = (0.5 * x).ln();
    let last = (0.5 * x + 10.0 * x.sqrt() + 30.0) as usize;
    let mut log_fact = 0.0;
    let mut sum = 0.0;
    for k in 0..=last {
        if k > 0 {
            log_fact += (k as f64).ln();
        }
        sum += (2.0 * k as f64 * lx - 2.0 * log_fact - a).exp();
    }
    sum
}

fn rings(spec: &InitSpec, seed: u64) -> Vec<Ring> {
    let mut out = vec![Ring { radius: spec.radius, height: 0.0, width: spec.width, amplitude: 1.0 }];
    if spec.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            out.push(Ring {
                radius: spec.radius * rng.gen_range(0.6..1.4),
                height: spec.radius * rng.gen_range(-0.5..0.5),
                width: spec.width,
                amplitude: spec.noise * rng.gen_range(-1.0..1.0),
            });
        }
    }
    out
}

/// `g (-y, x, 0)`: a swirl `u_θ = r g`, or the azimuthal potential of a poloidal ring.
fn azimuthal<T: Real>(grid: &Grid<T>, rings: &[Ring]) -> VectorField<T> {
    let g = |x: [T; 3]| {
        let (x0, x1, z) = (x[0].to64(), x[1].to64(), x[2].to64());
        rings.iter().map(|r| r.profile(x0 * x0 + x1 * x1, z)).sum::<f64>()
    };
    [
        SpectralField::from_real_fn(grid, |x| T::lit(-x[1].to64() * g(x))),
        SpectralField::from_real_fn(grid, |x| T::lit(x[0].to64() * g(x))),
        SpectralField::zeros(grid),
    ]
}

/// Keeps `|j| ≤ K` with `K` the two-thirds cutoff: a ball, so rotations about
/// the vertical axis map the kept set to itself.
pub fn truncate_to_ball<T: Real>(f: &mut SpectralField<T>) {
    let grid = f.grid().clone();
    let k = grid.dealias_cutoff();
    for (idx, c) in f.coeffs_mut().iter_mut().enumerate() {
        let j = grid.wavenumbers(idx);
        if j[0] * j[0] + j[1] * j[1] + j[2] * j[2] > k * k {
            *c = czero();
        }
    }
}

/// Divergence-free axisymmetric velocity of the family with unit ring amplitude.
pub fn unit_velocity<T: Real>(spec: &InitSpec, grid: &Grid<T>, seed: u64, dealias: bool) -> VectorField<T> {
    let field = azimuthal(grid, &rings(spec, seed));
    let field = match spec.family {
        InitFamily::GaussianSwirlRing => field,
        InitFamily::PoloidalVortex => curl(&field),
    };
    let mut u = leray_project(&field);
    for c in u.iter_mut() {
        c.remove_mean();
        clear_axis(c);
        if dealias {
            truncate_to_ball(c);
        }
    }
    u
}

/// Generic divergence-free velocity: the curl of random modes with `|j_a| ≤ max_j`,
/// off the vertical axis and inside the dealiasing ball, scaled to `max|u| = amplitude`.
pub fn random_solenoidal(grid: &Grid<f64>, max_j: i64, amplitude: f64, seed: u64) -> VectorField<f64> {
    let a = [
        random_band_limited(grid, max_j, 3 * seed),
        random_band_limited(grid, max_j, 3 * seed + 1),
        random_band_limited(grid, max_j, 3 * seed + 2),
    ];
    let mut u = curl(&a);
    for c in u.iter_mut() {
        clear_axis(c);
        truncate_to_ball(c);
    }
    let s = amplitude / velocity_sup(&u);
    u.map(|c| c.scale(s))
}

/// `max(‖𝒰₊‖_B, ‖𝒰₋‖_B, ‖𝒰₊‖_X, ‖𝒰₋‖_X)` at `t = 0`.
pub fn profile_size<T: Real>(u: &VectorField<T>, ctx: &NormContext) -> Result<f64> {
    let p = velocity_to_profiles(&VelocityState::new(u.clone(), T::zero(), T::zero()));
    let mut size: f64 = 0.0;
    for f in [&p.u_plus, &p.u_minus] {
        size = size.max(b_norm(f, &ctx.partition).value);
        size = size.max(x_norm(f, ctx)?.value);
    }
    Ok(size)
}

/// Initial state of the family scaled so that its profile size equals `epsilon`.
pub fn init_axisymmetric<T: Real>(
    spec: &InitSpec,
    epsilon: f64,
    grid: &Grid<T>,
    seed: u64,
    dealias: bool,
    kappa: T,
) -> Result<VelocityState<T>> {
    if epsilon == 0.0 {
        return Ok(VelocityState::zeros(grid, T::zero(), kappa));
    }
    let u = unit_velocity(spec, grid, seed, dealias);
    let size = match profile_size(&u, &NormContext::new(grid)) {
        Err(SolverError::Norm(NormError::Localization(LocalizationError::NotAxisymmetric { .. }))) => {
            return Err(SolverError::Config(format!(
                "the {} data is not axisymmetric on this grid: the ring overlaps its periodic images or is under-resolved \
                 (keep radius + 6 width below pi box_scale and width n / 2 box_scale above 6)",
                spec.family.name()
            )))
        }
        other => other?,
    };
    let factor = T::lit(epsilon / size);
    Ok(VelocityState::new(u.map(|c| c.scale(factor)), T::zero(), kappa))
}
