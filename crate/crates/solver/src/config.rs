//! Run configuration. Keys are snake_case and unknown keys are rejected.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

/// Largest step allowed: the rotation has unit speed and must be resolved.
pub const MAX_DT: f64 = 0.5;
/// Courant number used when the step is chosen automatically.
pub const CFL_NUMBER: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitFamily {
    GaussianSwirlRing,
    PoloidalVortex,
}

impl InitFamily {
    pub fn name(self) -> &'static str {
        match self {
            InitFamily::GaussianSwirlRing => "gaussian_swirl_ring",
            InitFamily::PoloidalVortex => "poloidal_vortex",
        }
    }
}

fn default_radius() -> f64 {
    3.0
}

fn default_width() -> f64 {
    1.5
}

/// Initial data family and its shape parameters (physical units).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitSpec {
    pub family: InitFamily,
    /// Ring radius.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Gaussian width of the ring cross-section.
    #[serde(default = "default_width")]
    pub width: f64,
    /// Relative amplitude of seeded extra rings; 0 disables them.
    #[serde(default)]
    pub noise: f64,
}

impl InitSpec {
    pub fn new(family: InitFamily) -> Self {
        Self { family, radius: default_radius(), width: default_width(), noise: 0.0 }
    }
}

/// Either a fixed step or `"auto"`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum TimeStep {
    #[default]
    Auto,
    Fixed(f64),
}

impl Serialize for TimeStep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TimeStep::Auto => s.serialize_str("auto"),
            TimeStep::Fixed(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for TimeStep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(TimeStep::Fixed(v)),
            Raw::Word(w) if w == "auto" => Ok(TimeStep::Auto),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("dt must be a number or \"auto\", got \"{w}\""))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    /// Diagnostics CSV.
    pub time_series: Option<PathBuf>,
    /// Per-step energy CSV.
    pub energy: Option<PathBuf>,
    /// Final (or last good) binary checkpoint.
    pub checkpoint: Option<PathBuf>,
}

impl OutputPaths {
    pub fn in_dir(dir: &std::path::Path) -> Self {
        Self {
            time_series: Some(dir.join("time_series.csv")),
            energy: Some(dir.join("energy.csv")),
            checkpoint: Some(dir.join("final.nsck")),
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_interval() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    pub box_scale: f64,
    pub kappa: f64,
    pub epsilon: f64,
    pub init: InitSpec,
    #[serde(default)]
    pub dt: TimeStep,
    pub t_end: f64,
    #[serde(default = "default_true")]
    pub dealias: bool,
    /// Fixed diagnostic spacing in time; dyadic times `2^m` are always added.
    #[serde(default = "default_interval")]
    pub diag_interval: f64,
    /// Compute B, X and D norms of the profiles every this many diagnostic samples; 0 never.
    #[serde(default)]
    pub norm_cadence: usize,
    /// Record `H^m` energy columns of this order.
    #[serde(default)]
    pub hm_order: Option<u32>,
    #[serde(default)]
    pub output: OutputPaths,
    #[serde(default)]
    pub seed: u64,
}

impl SimConfig {
    /// Configuration with every optional field at its default.
    pub fn new(n: usize, box_scale: f64, kappa: f64, epsilon: f64, t_end: f64, init: InitSpec) -> Self {
        Self {
            n,
            box_scale,
            kappa,
            epsilon,
            init,
            dt: TimeStep::Auto,
            t_end,
            dealias: true,
            diag_interval: default_interval(),
            norm_cadence: 0,
            hm_order: None,
            output: OutputPaths::default(),
            seed: 0,
        }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = TimeStep::Fixed(dt);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(SolverError::Config(m.to_string()));
        if self.n % 2 != 0 {
            return bad("n must be even");
        }
        if !(nsc_spectral::grid::MIN_MODES..=nsc_spectral::grid::MAX_MODES).contains(&self.n) {
            return bad("n must lie in [4, 1024]");
        }
        if !(self.box_scale > 0.0 && self.box_scale.is_finite()) {
            return bad("box_scale must be positive");
        }
        if !(0.0..=1.0).contains(&self.kappa) {
            return bad("kappa in [0,1]");
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon must be nonnegative");
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be nonnegative");
        }
        if let TimeStep::Fixed(dt) = self.dt {
            if !(dt > 0.0 && dt <= MAX_DT) {
                return bad("dt must lie in (0, 0.5]");
            }
        }
        if !(self.diag_interval > 0.0) {
            return bad("diag_interval must be positive");
        }
        if !(self.init.radius > 0.0 && self.init.width > 0.0 && self.init.noise >= 0.0) {
            return bad("init radius and width must be positive, noise nonnegative");
        }
        Ok(())
    }

    /// Parses JSON, rejecting unknown keys, and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text).map_err(|e| SolverError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}
