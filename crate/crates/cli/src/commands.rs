//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use nsc_resonance::positivity_sweep;
use nsc_solver::{inviscid_limit_experiment, run, OutputPaths, SimConfig};

use crate::error::{CliError, Result};
use crate::experiments::{checkpoint_norms, coefficient_csv, decay_experiment, oracle_experiment, parse_target};
use crate::manifest::ExperimentManifest;

#[derive(Debug, Parser)]
#[command(name = "nsc", version, about = "Rotating Navier-Stokes experiments in dispersive profile variables")]
pub struct Cli {
    /// Worker threads (default: one per hardware thread).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for outputs and the run manifest.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one configuration; writes time_series.csv, energy.csv, final.nsck.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Paired runs at several viscosities from the same data; writes convergence.json.
    Inviscid {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        kappas: Vec<f64>,
    },
    /// Sup-norm decay of a localized Gaussian packet under the linear flow.
    Decay {
        /// `k,p,q`, `k,p`, `k` or `whole`; `p`, `q` may be `floor`.
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        cell: String,
        #[arg(long, default_value_t = 10.0)]
        tmin: f64,
        #[arg(long, default_value_t = 100.0)]
        tmax: f64,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 16.0)]
        box_scale: f64,
    },
    /// B, X and D norms of a checkpoint.
    Norms {
        #[arg(long)]
        checkpoint: PathBuf,
    },
    /// Seeded Monte Carlo check of the resonance positivity statement.
    Sweep {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Exact c, a, a', c' coefficient tables as CSV.
    EnergyCoeffs {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Finite-difference consistency defect of the stepper.
    Oracle {
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        kappa: f64,
        #[arg(long, default_value_t = 11)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 5e-4])]
        dts: Vec<f64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate { .. } => "simulate",
            Command::Inviscid { .. } => "inviscid",
            Command::Decay { .. } => "decay",
            Command::Norms { .. } => "norms",
            Command::Sweep { .. } => "sweep",
            Command::EnergyCoeffs { .. } => "energy-coeffs",
            Command::Oracle { .. } => "oracle",
        }
    }
}

/// Reads a configuration file: unknown keys, type mismatches and constraint
/// violations are all validation errors.
pub fn parse_config(path: &Path) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    Ok(SimConfig::from_json(&text)?)
}

fn write(path: PathBuf, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Runs the command and fills in the manifest inputs and the output list.
fn execute(command: &Command, out: &Path, manifest: &mut ExperimentManifest, files: &mut Vec<PathBuf>) -> Result<()> {
    match command {
        Command::Simulate { config } => {
            let mut cfg = parse_config(config)?;
            if cfg.output == OutputPaths::default() {
                cfg.output = OutputPaths::in_dir(out);
            }
            files.extend(
                [&cfg.output.time_series, &cfg.output.energy, &cfg.output.checkpoint].into_iter().flatten().cloned(),
            );
            manifest.config = serde_json::to_value(&cfg)?;
            manifest.seed = Some(cfg.seed);
            let result = run(&cfg)?;
            log::info!("simulate: {} steps of {:.4e}", result.steps, result.dt);
        }
        Command::Inviscid { config, kappas } => {
            let cfg = parse_config(config)?;
            manifest.config = json!({ "config": cfg, "kappas": kappas });
            manifest.seed = Some(cfg.seed);
            let report = inviscid_limit_experiment(&cfg, kappas)?;
            write(out.join("convergence.json"), &pretty(&report)?, files)?;
        }
        Command::Decay { cell, tmin, tmax, points, n, box_scale } => {
            manifest.config =
                json!({ "cell": cell, "tmin": tmin, "tmax": tmax, "points": points, "n": n, "box_scale": box_scale });
            let target = parse_target(cell)?;
            let (summary, measurement) = decay_experiment(*n, *box_scale, target, *tmin, *tmax, *points)?;
            let mut rows = Vec::new();
            measurement.write_jsonl(&mut rows)?;
            write(out.join("decay.jsonl"), &String::from_utf8_lossy(&rows), files)?;
            write(out.join("decay.json"), &pretty(&summary)?, files)?;
        }
        Command::Norms { checkpoint } => {
            manifest.config = json!({ "checkpoint": checkpoint });
            let (summary, tables) = checkpoint_norms(checkpoint)?;
            write(out.join("norms.json"), &pretty(&summary)?, files)?;
            for (name, b, x) in tables {
                write(out.join(format!("b_{name}.csv")), &b.to_csv(), files)?;
                write(out.join(format!("x_{name}.csv")), &x.to_csv(), files)?;
            }
        }
        Command::Sweep { samples, seed } => {
            manifest.config = json!({ "samples": samples, "seed": seed });
            manifest.seed = Some(*seed);
            let report = positivity_sweep(*samples, *seed);
            write(out.join("sweep.json"), &(report.to_json() + "\n"), files)?;
        }
        Command::EnergyCoeffs { nmax } => {
            manifest.config = json!({ "nmax": nmax });
            write(out.join("energy_coeffs.csv"), &coefficient_csv(*nmax)?, files)?;
        }
        Command::Oracle { n, kappa, seed, dts } => {
            manifest.config = json!({ "n": n, "kappa": kappa, "seed": seed, "dts": dts });
            manifest.seed = Some(*seed);
            let summary = oracle_experiment(*n, *kappa, *seed, dts)?;
            write(out.join("oracle.json"), &pretty(&summary)?, files)?;
        }
    }
    Ok(())
}

/// Runs a parsed command line and returns the process exit code: 0 on success,
/// 1 on invalid input, 2 when the integration produced non-finite values.
/// A manifest is written whenever the output directory is usable.
pub fn dispatch(cli: &Cli) -> i32 {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return 1;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            log::warn!("thread pool already set up: {e}");
        }
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("error: cannot create {}: {e}", cli.out.display());
        return 1;
    }
    let mut manifest = ExperimentManifest::start(cli.command.name(), serde_json::Value::Null, None);
    let mut files = Vec::new();
    let outcome = execute(&cli.command, &cli.out, &mut manifest, &mut files);
    let code = match &outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Numerical { checkpoint: Some(path), .. } = e {
                eprintln!("last good state kept in {}", path.display());
            }
            e.exit_code()
        }
    };
    let written = manifest.finish(&files, code).and_then(|_| manifest.write(&cli.out));
    match written {
        Ok(_) => code,
        Err(e) => {
            eprintln!("error: writing manifest: {e}");
            code.max(1)
        }
    }
}

/// Parses `args` (program name first) and dispatches. Help and version exit 0;
/// malformed command lines are validation failures.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            }
        }
    }
}
