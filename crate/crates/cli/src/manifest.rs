//! Run manifests: what was run, with which inputs, and checksums of what it wrote.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputFile {
    /// Path as written.
    pub path: PathBuf,
    pub sha256: String,
    pub bytes: u64,
}

impl OutputFile {
    pub fn hash(path: &Path) -> Result<Self> {
        let data = std::fs::read(path)?;
        Ok(Self { path: path.to_path_buf(), sha256: sha256_hex(&data), bytes: data.len() as u64 })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentManifest {
    pub command: String,
    /// Fully resolved inputs, defaults included.
    pub config: serde_json::Value,
    pub version: String,
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch.
    pub started: f64,
    pub finished: f64,
    pub exit_code: i32,
    pub outputs: Vec<OutputFile>,
}

impl ExperimentManifest {
    pub fn start(command: &str, config: serde_json::Value, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            started: now(),
            finished: 0.0,
            exit_code: 0,
            outputs: Vec::new(),
        }
    }

    /// Hashes every file that exists; missing ones (say, a checkpoint that was
    /// never reached) are left out.
    pub fn finish(&mut self, files: &[PathBuf], exit_code: i32) -> Result<()> {
        self.finished = now();
        self.exit_code = exit_code;
        self.outputs = files.iter().filter(|p| p.exists()).map(|p| OutputFile::hash(p)).collect::<Result<_>>()?;
        Ok(())
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n")?;
        Ok(path)
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

fn now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}
