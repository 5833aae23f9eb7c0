//! Experiment configuration, read from TOML or assembled from flags.
//!
//! ```toml
//! benchmark_id = "MF2.1"
//! repeats = 20
//! base_seed = 7
//! output_dir = "results/mf21"
//! normalization_mode = "table"
//!
//! [solver]
//! name = "mf-screening"
//!
//! [solver.parameters]
//! top_k = 8
//! ```
//!
//! Repeat `r` runs with seed `base_seed + r`; a `seed` inside `[solver]`
//! is replaced by that value.

use std::path::{Path, PathBuf};

use mfbench::metrics::NormalizationMode;
use mfbench::solvers::{solver_info, SolverConfig};
use mfbench::BenchmarkId;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_REPEATS: usize = 20;

fn default_repeats() -> usize {
    DEFAULT_REPEATS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub benchmark_id: BenchmarkId,
    pub solver: SolverConfig,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub base_seed: u64,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub normalization_mode: NormalizationMode,
}

impl ExperimentConfig {
    pub fn new(
        benchmark_id: BenchmarkId,
        solver: SolverConfig,
        output_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            benchmark_id,
            solver,
            repeats: DEFAULT_REPEATS,
            base_seed: 0,
            output_dir: output_dir.into(),
            normalization_mode: NormalizationMode::default(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks the invariants and returns the solver parameters with
    /// defaults filled in.
    pub fn validate(&self) -> Result<SolverConfig, CliError> {
        if self.repeats == 0 {
            return Err(CliError::Config("repeats must be at least 1".into()));
        }
        let info = solver_info(&self.solver.name).map_err(|e| CliError::Config(e.to_string()))?;
        let parameters = info
            .resolve(&self.solver.parameters)
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(SolverConfig {
            name: self.solver.name.clone(),
            parameters,
            seed: 0,
        })
    }

    pub fn seed_for(&self, repeat: usize) -> u64 {
        self.base_seed.wrapping_add(repeat as u64)
    }
}

/// Parses a `key=value` solver parameter.
pub fn parse_param(text: &str) -> Result<(String, f64), CliError> {
    let (key, value) = text.split_once('=').ok_or_else(|| {
        CliError::Usage(format!("parameter `{text}` is not of the form key=value"))
    })?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("parameter `{text}` has a non-numeric value")))?;
    Ok((key.trim().to_string(), value))
}
