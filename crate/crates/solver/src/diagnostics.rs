use std::fmt::Write as _;

use serde::Serialize;

use nsc_norms::{axisymmetry_residual, b_norm, d_norm, x_norm, NormContext};
use nsc_spectral::{
    divergence_residual, gradient_sup_norm, homogeneous_sobolev_norm, sobolev_norm, Real, SpectralField, VectorField,
};
use nsc_unknowns::ProfilePair;

use crate::error::Result;

/// Norms of one profile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ProfileNorms {
    pub b: f64,
    pub x: f64,
    /// `None` when an `S`-iterate leaves the box or loses axisymmetry on the grid.
    pub d: Option<f64>,
}

impl ProfileNorms {
    pub fn of<T: Real>(f: &SpectralField<T>, ctx: &NormContext) -> Result<Self> {
        let d = match d_norm(f, ctx) {
            Ok(d) => Some(d.value),
            Err(e) => {
                log::warn!("D norm skipped: {e}");
                None
            }
        };
        Ok(Self { b: b_norm(f, &ctx.partition).value, x: x_norm(f, ctx)?.value, d })
    }
}

/// One diagnostic record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub step: usize,
    pub l2: f64,
    pub h1: f64,
    pub grad_sup: f64,
    pub plus: Option<ProfileNorms>,
    pub minus: Option<ProfileNorms>,
    pub axisymmetry: f64,
    pub divergence: f64,
    /// Time integral of the forcing norm dropped on `ξ_h = 0` so far.
    pub axis_projected: f64,
}

impl Sample {
    pub fn measure<T: Real>(u: &VectorField<T>, t: f64, step: usize, axis_projected: f64) -> Self {
        Self {
            t,
            step,
            l2: l2_sq(u).sqrt(),
            h1: h1_sq(u).sqrt(),
            grad_sup: gradient_sup_norm(u).to64(),
            plus: None,
            minus: None,
            axisymmetry: axisymmetry_residual(u),
            divergence: divergence_residual(u).to64(),
            axis_projected,
        }
    }

    pub fn with_norms<T: Real>(mut self, profiles: &ProfilePair<T>, ctx: &NormContext) -> Result<Self> {
        self.plus = Some(ProfileNorms::of(&profiles.u_plus, ctx)?);
        self.minus = Some(ProfileNorms::of(&profiles.u_minus, ctx)?);
        Ok(self)
    }
}

pub fn l2_sq<T: Real>(u: &VectorField<T>) -> f64 {
    u.iter().map(|c| c.l2_norm().to64().powi(2)).sum()
}

/// `‖∇u‖²`.
pub fn h1_sq<T: Real>(u: &VectorField<T>) -> f64 {
    u.iter().map(|c| homogeneous_sobolev_norm(c, T::one()).to64().powi(2)).sum()
}

/// `‖u‖²_{H^m}` and `‖∇u‖²_{H^m}`.
pub fn hm_pair<T: Real>(u: &VectorField<T>, m: u32) -> (f64, f64) {
    let m = m as i32;
    let e: f64 = u.iter().map(|c| sobolev_norm(c, m).to64().powi(2)).sum();
    // (1+|ξ|²)^m |ξ|² = (1+|ξ|²)^{m+1} - (1+|ξ|²)^m.
    let up: f64 = u.iter().map(|c| sobolev_norm(c, m + 1).to64().powi(2)).sum();
    (e, up - e)
}

/// Diagnostic records in time order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TimeSeries {
    pub samples: Vec<Sample>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

impl TimeSeries {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "t,step,l2,h1,grad_sup,b_plus,b_minus,x_plus,x_minus,d_plus,d_minus,axisymmetry,divergence,axis_projected\n",
        );
        for s in &self.samples {
            let pick = |f: fn(&ProfileNorms) -> Option<f64>| {
                (opt(s.plus.as_ref().and_then(f)), opt(s.minus.as_ref().and_then(f)))
            };
            let (bp, bm) = pick(|n| Some(n.b));
            let (xp, xm) = pick(|n| Some(n.x));
            let (dp, dm) = pick(|n| n.d);
            let _ = writeln!(
                out,
                "{},{},{:e},{:e},{:e},{bp},{bm},{xp},{xm},{dp},{dm},{:e},{:e},{:e}",
                s.t, s.step, s.l2, s.h1, s.grad_sup, s.axisymmetry, s.divergence, s.axis_projected
            );
        }
        out
    }

    /// `max_t residual(t) - residual(0)`.
    pub fn axisymmetry_growth(&self) -> f64 {
        let Some(first) = self.samples.first() else { return 0.0 };
        self.samples.iter().map(|s| s.axisymmetry - first.axisymmetry).fold(0.0, f64::max)
    }

    pub fn max_divergence(&self) -> f64 {
        self.samples.iter().map(|s| s.divergence).fold(0.0, f64::max)
    }
}

/// Step indices at which to record: multiples of `interval`, dyadic times
/// `2^m`, and both ends. Times are snapped to the nearest step.
pub fn diagnostic_steps(dt: f64, steps: usize, interval: f64) -> Vec<usize> {
    let t_end = dt * steps as f64;
    let mut times = vec![0.0, t_end];
    let mut t = interval;
    while t < t_end {
        times.push(t);
        t += interval;
    }
    let mut m = (dt.log2().ceil()) as i32;
    while 2f64.powi(m) < t_end {
        times.push(2f64.powi(m));
        m += 1;
    }
    let mut out: Vec<usize> = times.into_iter().map(|t| ((t / dt).round() as usize).min(steps)).collect();
    out.sort_unstable();
    out.dedup();
    out
}
