//! Replicated experiments: every (function, algorithm) cell is run `runs`
//! times under an evaluation budget of `budget_per_dim * D`, each run on its
//! own derived random streams.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::benchmarks::{make_shift_rotate, FunctionId, Instance, ObjectiveSpec, ShiftRotate};
use crate::optimizers::{Algorithm, OptimizerConfig};
use crate::{Error, EvaluationBudget, Evaluator, Result, RngStream, RunRecord, DEFAULT_BUDGET_PER_DIM};

const STREAM_OPTIMIZER: u64 = 1;
const STREAM_NOISE: u64 = 2;
const STREAM_TRANSFORM: u64 = 3;

/// Default base seed when none is configured.
pub const DEFAULT_SEED: u64 = 20_180_101;

/// Whether functions are used as listed or randomly shift-rotated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Variant {
    /// Functions as listed (optima mostly at the origin).
    #[default]
    Plain,
    /// A fresh shift-rotation per (function, run).
    ShiftRotated,
}

impl Variant {
    /// Name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::ShiftRotated => "shift_rotated",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "shift_rotated" => Ok(Variant::ShiftRotated),
            _ => Err(Error::InvalidPlan("variant must be `plain` or `shift_rotated`")),
        }
    }
}

/// What to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    /// Functions, in output order.
    pub functions: Vec<FunctionId>,
    /// Algorithm configurations, in output order.
    pub algorithms: Vec<OptimizerConfig>,
    /// Decision variables per function.
    pub dimension: usize,
    /// Independent runs per cell.
    pub runs: usize,
    /// Evaluation budget per decision variable.
    pub budget_per_dim: usize,
    /// Plain or shift-rotated functions.
    pub variant: Variant,
    /// Root of every derived random stream.
    pub base_seed: u64,
    /// Evaluations between trace samples; `None` uses each algorithm's
    /// evaluations per iteration.
    pub trace_stride: Option<usize>,
}

impl ExperimentPlan {
    /// Plan with the standard protocol: D = 30, 30 runs, 1333 FFE per dimension.
    pub fn new(functions: Vec<FunctionId>, algorithms: Vec<OptimizerConfig>) -> Self {
        Self {
            functions,
            algorithms,
            dimension: 30,
            runs: 30,
            budget_per_dim: DEFAULT_BUDGET_PER_DIM,
            variant: Variant::Plain,
            base_seed: DEFAULT_SEED,
            trace_stride: None,
        }
    }

    /// Resolves registry names, failing on the first unknown one.
    pub fn from_names<S: AsRef<str>>(functions: &[S], algorithms: &[S]) -> Result<Self> {
        let functions = functions.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<_>>>()?;
        let algorithms = algorithms
            .iter()
            .map(|s| s.as_ref().parse::<Algorithm>().map(Algorithm::default_config))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(functions, algorithms))
    }

    /// Evaluation ceiling per run.
    pub fn max_ffe(&self) -> usize {
        self.budget_per_dim * self.dimension
    }

    /// Checks the plan before any run starts.
    pub fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(Error::InvalidPlan("no functions selected"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidPlan("no algorithms selected"));
        }
        if self.runs == 0 {
            return Err(Error::InvalidPlan("runs must be at least 1"));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidDimension);
        }
        for config in &self.algorithms {
            config.validate()?;
            if self.max_ffe() < config.population_size() {
                return Err(Error::BudgetTooSmall {
                    budget: self.max_ffe(),
                    population: config.population_size(),
                });
            }
        }
        Ok(())
    }

    fn cell_path(&self, tag: u64, function: FunctionId, algorithm: Algorithm, run: usize) -> [u64; 5] {
        [tag, self.variant as u64, function.index() as u64, algorithm.index() as u64, run as u64]
    }

    /// The transform every algorithm faces on `(function, run)`, or `None`
    /// for the plain variant.
    pub fn transform_for(&self, function: FunctionId, run: usize) -> Result<Option<ShiftRotate>> {
        match self.variant {
            Variant::Plain => Ok(None),
            Variant::ShiftRotated => {
                let spec = ObjectiveSpec::new(function, self.dimension)?;
                let mut rng = RngStream::derive(
                    self.base_seed,
                    &[STREAM_TRANSFORM, function.index() as u64, run as u64],
                );
                make_shift_rotate(&mut rng, &spec).map(Some)
            }
        }
    }

    /// Benchmark instance for `(function, run)`.
    pub fn instance(&self, function: FunctionId, run: usize) -> Result<Instance> {
        let spec = ObjectiveSpec::new(function, self.dimension)?;
        match self.transform_for(function, run)? {
            None => Ok(Instance::plain(spec)),
            Some(t) => Instance::transformed(spec, t),
        }
    }
}

/// Executes run number `run` of one cell. Results depend only on the plan's
/// seed and the cell coordinates, not on execution order.
pub fn run_single(
    plan: &ExperimentPlan,
    function: FunctionId,
    config: &OptimizerConfig,
    run: usize,
) -> Result<RunRecord> {
    let instance = plan.instance(function, run)?;
    let algorithm = config.algorithm();
    let mut rng =
        RngStream::derive(plan.base_seed, &plan.cell_path(STREAM_OPTIMIZER, function, algorithm, run));
    let noise =
        RngStream::derive(plan.base_seed, &plan.cell_path(STREAM_NOISE, function, algorithm, run));
    let stride = plan.trace_stride.unwrap_or_else(|| config.ffe_per_iteration());
    let eval = Evaluator::new(&instance, EvaluationBudget::new(plan.max_ffe()), noise)
        .with_trace_stride(stride);
    config.run(eval, &mut rng)
}

/// Aggregated results of one (function, algorithm) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    /// Benchmark function.
    pub function: FunctionId,
    /// Algorithm.
    pub algorithm: Algorithm,
    /// Mean of the runs' best values.
    pub mean: f64,
    /// Sample standard deviation of the runs' best values.
    pub sd: f64,
    /// The individual runs, in run order.
    pub runs: Vec<RunRecord>,
}

impl CellSummary {
    /// Summarizes completed runs.
    pub fn from_runs(function: FunctionId, algorithm: Algorithm, runs: Vec<RunRecord>) -> Result<Self> {
        let values: Vec<f64> = runs.iter().map(|r| r.best_value).collect();
        let (mean, sd) = summarize(&values)?;
        Ok(Self { function, algorithm, mean, sd, runs })
    }
}

/// Arithmetic mean and sample (`n - 1`) standard deviation; `sd = 0` for a
/// single value.
pub fn summarize(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Ok((mean, 0.0));
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok((mean, libm::sqrt(ss / (n - 1.0))))
}

/// Runs every cell sequentially, in (function, algorithm) order.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<CellSummary>> {
    plan.validate()?;
    let mut cells = Vec::with_capacity(plan.functions.len() * plan.algorithms.len());
    for &function in &plan.functions {
        for config in &plan.algorithms {
            let runs = (0..plan.runs)
                .map(|run| run_single(plan, function, config, run))
                .collect::<Result<Vec<_>>>()?;
            cells.push(CellSummary::from_runs(function, config.algorithm(), runs)?);
        }
    }
    Ok(cells)
}
