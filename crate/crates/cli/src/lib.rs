//! Command-line driver: configuration parsing, experiment orchestration and
//! report files with a checksummed manifest.

pub mod commands;
pub mod error;
pub mod experiments;
pub mod manifest;

pub use commands::{dispatch, main_with_args, parse_config, Cli, Command};
pub use error::{CliError, Result};
pub use experiments::{
    checkpoint_norms, coefficient_csv, decay_experiment, gaussian_packet, oracle_experiment, parse_target, target_name,
    DecaySummary, FieldNorms, NormsSummary, OracleSummary, COEFF_FAMILIES, ORACLE_TIME,
};
pub use manifest::{sha256_hex, ExperimentManifest, OutputFile, MANIFEST_FILE};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for invalid arguments, configuration or input.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit code for a numerical abort.
pub const EXIT_NUMERICAL: i32 = 2;
