//! Finite-difference check that the stepper solves the profile equation
//! `∂_t 𝒰± + κ|ξ|²𝒰± = e^{∓itΛ}N±`.

use serde::Serialize;

use nsc_spectral::{Real, SpectralField};
use nsc_unknowns::ProfilePair;

use crate::error::{Result, SolverError};
use crate::stepper::{heat_generator, profile_forcing, step, StepOptions};

/// Largest grid the oracle accepts.
pub const ORACLE_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub dt: f64,
    /// `‖(𝒰(t+dt) - 𝒰(t-dt))/2dt + κ|ξ|²𝒰(t) - e^{∓itΛ}N±(t)‖` over both signs.
    pub defect: f64,
    /// Norm of the forcing it is compared against.
    pub forcing: f64,
    /// `defect / forcing`, or relative to the state when the forcing vanishes.
    pub relative: f64,
}

pub fn consistency_oracle<T: Real>(state: &ProfilePair<T>, dt_probe: T, opts: StepOptions) -> Result<OracleReport> {
    let n = state.u_plus.grid().n();
    if n > ORACLE_MAX_N {
        return Err(SolverError::GridTooLarge { n });
    }
    let ahead = step(state, dt_probe, opts)?.state;
    let behind = step(state, -dt_probe, opts)?.state;
    let forcing = profile_forcing(state, opts);
    let inv = T::one() / (dt_probe + dt_probe);
    let residual = |a: &SpectralField<T>, b: &SpectralField<T>, u: &SpectralField<T>, f: &SpectralField<T>| {
        a.sub(b).scale(inv).add(&heat_generator(u, state.kappa)).sub(f).l2_norm().to64()
    };
    let dp = residual(&ahead.u_plus, &behind.u_plus, &state.u_plus, &forcing.plus);
    let dm = residual(&ahead.u_minus, &behind.u_minus, &state.u_minus, &forcing.minus);
    let defect = dp.hypot(dm);
    let f = forcing.plus.l2_norm().to64().hypot(forcing.minus.l2_norm().to64());
    let size = state.u_plus.l2_norm().to64().hypot(state.u_minus.l2_norm().to64());
    let relative = if f > 0.0 {
        defect / f
    } else if size > 0.0 {
        defect / size
    } else {
        defect
    };
    Ok(OracleReport { dt: dt_probe.to64(), defect, forcing: f, relative })
}
