use std::path::{Path, PathBuf};

use dfmoint_core::SolverConfig;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A run configuration file. Command-line flags override its fields.
///
/// ```json
/// {
///   "solver": { "eps": 0.001, "max_evals": 5000 },
///   "instance": "UF3-n20-fam4",
///   "out": "runs/uf3"
/// }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub solver: SolverConfig,
    /// Penalty parameters to run in turn, each warm-started from the
    /// previous front.
    pub eps_schedule: Option<Vec<f64>>,
    pub instance: Option<String>,
    /// Path to a subprocess problem descriptor.
    pub problem: Option<PathBuf>,
    pub filter: Option<String>,
    pub tag: Option<String>,
    pub results_root: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfigFile {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::parse(origin, e))?;
        cfg.solver.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }
}
