//! Time integration of the rotating Navier–Stokes system in profile variables.
//!
//! The state is the pair of profiles `𝒰±`. The heat factor is applied exactly
//! and the dispersive phase enters only through the nonlinear term, so the
//! same code path covers `κ = 0`.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod init;
pub mod inviscid;
pub mod oracle;
pub mod run;
pub mod stepper;

pub use config::{InitFamily, InitSpec, OutputPaths, SimConfig, TimeStep, CFL_NUMBER, MAX_DT};
pub use diagnostics::{diagnostic_steps, ProfileNorms, Sample, TimeSeries};
pub use error::{Result, SolverError};
pub use init::{init_axisymmetric, profile_size, random_solenoidal, truncate_to_ball, unit_velocity};
pub use inviscid::{
    inviscid_limit_experiment, ConvergenceReport, PairHistory, FIT_T_MIN, GRONWALL_ALLOWANCE, MAX_KAPPA,
};
pub use oracle::{consistency_oracle, OracleReport, ORACLE_MAX_N};
pub use run::{cfl_limit, resolve_dt, run, run_from, velocity_sup, RunOutput};
pub use stepper::{
    advance, heat_generator, profile_forcing, step, step_doubling_error, zero_profiles, Forcing, Step, StepOptions,
};

/// Double precision run output.
pub type Output = RunOutput<f64>;
/// Double precision profile state.
pub type State = nsc_unknowns::ProfilePair<f64>;
