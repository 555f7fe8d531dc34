//! TOML experiment configuration.
//!
//! Every key is optional. Omitted algorithm parameters take the published
//! defaults and unknown keys are rejected:
//!
//! ```toml
//! functions = ["sphere", "rastrigin"]
//! algorithms = ["pso", "abc"]
//! dimension = 30
//! runs = 30
//! variant = "shift_rotated"
//! seed = 7
//! out = "results"
//!
//! [pso]
//! inertia = 0.25
//! ```

use std::path::{Path, PathBuf};

use metabench_core::benchmarks::FunctionId;
use metabench_core::harness::{ExperimentPlan, Variant, DEFAULT_SEED};
use metabench_core::optimizers::{
    AbcConfig, Algorithm, CoaConfig, GaConfig, OptimizerConfig, PsoConfig, TlboConfig,
};
use metabench_core::DEFAULT_BUDGET_PER_DIM;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable overriding the default base seed.
pub const SEED_ENV: &str = "METABENCH_SEED";

/// Contents of a configuration file, after defaults are filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    /// Function registry names; all twenty by default.
    pub functions: Vec<String>,
    /// Algorithm registry names; all five by default.
    pub algorithms: Vec<String>,
    /// Decision variables.
    pub dimension: usize,
    /// Runs per cell.
    pub runs: usize,
    /// Evaluations per decision variable.
    pub budget_per_dim: usize,
    /// `plain` or `shift_rotated`.
    pub variant: Variant,
    /// Base seed; falls back to `METABENCH_SEED`, then the built-in default.
    pub seed: Option<u64>,
    /// Evaluations between trace samples.
    pub trace_stride: Option<usize>,
    /// Output directory.
    pub out: PathBuf,
    /// GA parameters.
    pub ga: GaConfig,
    /// PSO parameters.
    pub pso: PsoConfig,
    /// ABC parameters.
    pub abc: AbcConfig,
    /// TLBO parameters.
    pub tlbo: TlboConfig,
    /// COA parameters.
    pub coa: CoaConfig,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            functions: FunctionId::ALL.iter().map(|f| f.name().to_string()).collect(),
            algorithms: Algorithm::ALL.iter().map(|a| a.name().to_string()).collect(),
            dimension: 30,
            runs: 30,
            budget_per_dim: DEFAULT_BUDGET_PER_DIM,
            variant: Variant::Plain,
            seed: None,
            trace_stride: None,
            out: PathBuf::from("results"),
            ga: GaConfig::default(),
            pso: PsoConfig::default(),
            abc: AbcConfig::default(),
            tlbo: TlboConfig::default(),
            coa: CoaConfig::default(),
        }
    }
}

impl CliConfig {
    /// Reads and parses a TOML file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Parses TOML text.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Parameters for one algorithm.
    pub fn optimizer(&self, algorithm: Algorithm) -> OptimizerConfig {
        match algorithm {
            Algorithm::Ga => OptimizerConfig::Ga(self.ga.clone()),
            Algorithm::Pso => OptimizerConfig::Pso(self.pso.clone()),
            Algorithm::Abc => OptimizerConfig::Abc(self.abc.clone()),
            Algorithm::Tlbo => OptimizerConfig::Tlbo(self.tlbo.clone()),
            Algorithm::Coa => OptimizerConfig::Coa(self.coa.clone()),
        }
    }

    /// Seed after applying the environment fallback.
    pub fn resolve_seed(&self, env: Option<&str>) -> Result<u64, CliError> {
        if let Some(seed) = self.seed {
            return Ok(seed);
        }
        match env {
            Some(text) => text
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{SEED_ENV}={text:?} is not a 64-bit unsigned integer"))),
            None => Ok(DEFAULT_SEED),
        }
    }

    /// Validated experiment plan. `seed` must already be resolved.
    pub fn plan(&self) -> Result<ExperimentPlan, CliError> {
        let config = |e: metabench_core::Error| CliError::Config(e.to_string());
        let functions = self
            .functions
            .iter()
            .map(|s| s.parse::<FunctionId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(config)?;
        let algorithms = self
            .algorithms
            .iter()
            .map(|s| s.parse::<Algorithm>().map(|a| self.optimizer(a)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(config)?;
        let mut plan = ExperimentPlan::new(functions, algorithms);
        plan.dimension = self.dimension;
        plan.runs = self.runs;
        plan.budget_per_dim = self.budget_per_dim;
        plan.variant = self.variant;
        plan.base_seed = self.seed.unwrap_or(DEFAULT_SEED);
        plan.trace_stride = self.trace_stride;
        plan.validate().map_err(config)?;
        Ok(plan)
    }
}
