use std::fmt::Write as _;
use std::path::Path;

use nsc_energy::EnergySeries;
use nsc_norms::NormContext;
use nsc_spectral::{make_grid, Checkpoint, Real, VectorField, VelocityState};
use nsc_unknowns::{profiles_to_velocity, velocity_to_profiles, ProfilePair};

use crate::config::{SimConfig, TimeStep, CFL_NUMBER, MAX_DT};
use crate::diagnostics::{diagnostic_steps, h1_sq, hm_pair, l2_sq, Sample, TimeSeries};
use crate::error::{Result, SolverError};
use crate::init::init_axisymmetric;
use crate::stepper::{step, StepOptions};

/// Grid sup of `|u|`.
pub fn velocity_sup<T: Real>(u: &VectorField<T>) -> f64 {
    let phys: Vec<_> = u.iter().map(|c| c.to_physical()).collect();
    (0..phys[0].len()).map(|i| phys.iter().map(|p| p[i].re.to64().powi(2)).sum::<f64>()).fold(0.0, f64::max).sqrt()
}

/// `CFL_NUMBER · h / max|u|`, capped at `MAX_DT`.
pub fn cfl_limit<T: Real>(u: &VectorField<T>) -> f64 {
    let grid = u[0].grid();
    let h = grid.spacing().to64();
    let vmax = velocity_sup(u);
    if vmax == 0.0 {
        MAX_DT
    } else {
        (CFL_NUMBER * h / vmax).min(MAX_DT)
    }
}

/// The step actually used: the requested (or automatic) step shrunk so that
/// a whole number of steps lands on `t_end`. Fixed steps beyond the CFL limit
/// only warn, so that unstable runs can be provoked on purpose.
pub fn resolve_dt<T: Real>(requested: TimeStep, u: &VectorField<T>, t_end: f64) -> (f64, usize) {
    let limit = cfl_limit(u);
    let dt = match requested {
        TimeStep::Auto => limit,
        TimeStep::Fixed(dt) => {
            if dt > limit {
                log::warn!("dt = {dt} exceeds the CFL limit {limit:.3e}");
            }
            dt
        }
    };
    if t_end == 0.0 {
        return (dt, 0);
    }
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    (t_end / steps as f64, steps)
}

#[derive(Clone, Debug)]
pub struct RunOutput<T: Real> {
    pub dt: f64,
    pub steps: usize,
    pub series: TimeSeries,
    /// Per-step energy record, uniform in time.
    pub energy: EnergySeries,
    pub final_state: VelocityState<T>,
    pub profiles: ProfilePair<T>,
}

fn energy_csv(e: &EnergySeries) -> String {
    let mut out = String::from("t,energy,dissipation,grad_sup,hm_energy,hm_dissipation\n");
    for i in 0..e.times.len() {
        let hm = |v: &Vec<f64>| v.get(i).map(|x| format!("{x:e}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{:e},{:e},{:e},{},{}",
            e.times[i],
            e.energy[i],
            e.dissipation[i],
            e.grad_sup[i],
            hm(&e.hm_energy),
            hm(&e.hm_dissipation)
        );
    }
    out
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn save_checkpoint<T: Real>(state: &VelocityState<T>, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    Checkpoint::from_fields(&state.u, state.t, state.kappa).save(path)?;
    Ok(())
}

fn record_energy<T: Real>(e: &mut EnergySeries, u: &VectorField<T>, t: f64, hm_order: Option<u32>) {
    e.times.push(t);
    e.energy.push(l2_sq(u));
    e.dissipation.push(h1_sq(u));
    e.grad_sup.push(nsc_spectral::gradient_sup_norm(u).to64());
    if let Some(m) = hm_order {
        let (a, b) = hm_pair(u, m);
        e.hm_energy.push(a);
        e.hm_dissipation.push(b);
    }
}

/// Builds the configured initial data and integrates it in double precision.
pub fn run(config: &SimConfig) -> Result<RunOutput<f64>> {
    config.validate()?;
    let grid = make_grid(config.n, config.box_scale)?;
    let init = init_axisymmetric(&config.init, config.epsilon, &grid, config.seed, config.dealias, config.kappa)?;
    run_from(config, init)
}

/// Integrates `initial` to `config.t_end`, recording diagnostics and writing outputs.
pub fn run_from<T: Real>(config: &SimConfig, initial: VelocityState<T>) -> Result<RunOutput<T>> {
    config.validate()?;
    let opts = StepOptions { nonlinear: true, dealias: config.dealias };
    let kappa = T::lit(config.kappa);
    let mut profiles = velocity_to_profiles(&VelocityState::new(initial.u.clone(), initial.t, kappa));
    let (dt, steps) = resolve_dt(config.dt, &initial.u, config.t_end);
    let record_at = diagnostic_steps(dt, steps, config.diag_interval);
    let ctx = (config.norm_cadence > 0).then(|| NormContext::new(initial.grid()));
    let t0 = initial.t.to64();

    let mut series = TimeSeries::default();
    let mut energy = EnergySeries { kappa: config.kappa, order: config.hm_order, ..Default::default() };
    let mut axis_projected = 0.0;
    let mut next_record = 0;
    let mut last_good = initial.clone();

    for n in 0..=steps {
        let u = profiles_to_velocity(&profiles);
        let t = t0 + dt * n as f64;
        record_energy(&mut energy, &u.u, t, config.hm_order);
        if record_at.get(next_record) == Some(&n) {
            let mut sample = Sample::measure(&u.u, t, n, axis_projected);
            if let Some(ctx) = &ctx {
                if next_record % config.norm_cadence == 0 {
                    sample = sample.with_norms(&profiles, ctx)?;
                }
            }
            series.samples.push(sample);
            next_record += 1;
        }
        last_good = u;
        if n == steps {
            break;
        }
        match step(&profiles, T::lit(dt), opts) {
            Ok(s) => {
                axis_projected += dt * s.axis_norm;
                profiles = s.state;
            }
            Err(SolverError::NonFinite { t, last_good: lg, .. }) => {
                let checkpoint = config.output.checkpoint.clone();
                if let Some(path) = &checkpoint {
                    save_checkpoint(&last_good, path)?;
                }
                if let Some(path) = &config.output.time_series {
                    write_text(path, &series.to_csv())?;
                }
                return Err(SolverError::NonFinite { t, last_good: lg, checkpoint });
            }
            Err(e) => return Err(e),
        }
    }

    if let Some(path) = &config.output.time_series {
        write_text(path, &series.to_csv())?;
    }
    if let Some(path) = &config.output.energy {
        write_text(path, &energy_csv(&energy))?;
    }
    if let Some(path) = &config.output.checkpoint {
        save_checkpoint(&last_good, path)?;
    }
    Ok(RunOutput { dt, steps, series, energy, final_state: last_good, profiles })
}
