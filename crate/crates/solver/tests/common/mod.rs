#![allow(dead_code)]

use nsc_solver::*;
use nsc_spectral::*;
use nsc_unknowns::velocity_to_profiles;

pub fn random_velocity(n: usize, l: f64, max_j: i64, amplitude: f64, seed: u64) -> VectorField<f64> {
    random_solenoidal(&make_grid(n, l).unwrap(), max_j, amplitude, seed)
}

pub fn random_profiles(n: usize, l: f64, max_j: i64, amplitude: f64, seed: u64, t: f64, kappa: f64) -> State {
    let u = random_velocity(n, l, max_j, amplitude, seed);
    let mut p = velocity_to_profiles(&VelocityState::new(u, t, kappa));
    p.t = t;
    p
}

pub fn profile_distance(a: &State, b: &State) -> f64 {
    a.u_plus.sub(&b.u_plus).l2_norm().hypot(a.u_minus.sub(&b.u_minus).l2_norm())
}

pub fn profile_norm(a: &State) -> f64 {
    a.u_plus.l2_norm().hypot(a.u_minus.l2_norm())
}
