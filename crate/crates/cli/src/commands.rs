//! The `list`, `run` and `rank` commands.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Args;
use metabench_core::benchmarks::FunctionId;
use metabench_core::harness::{run_single, CellSummary, ExperimentPlan, Variant};
use metabench_core::optimizers::{Algorithm, OptimizerConfig};
use metabench_core::Bounds;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{CliConfig, SEED_ENV};
use crate::report::{read_summary, write_summary, write_trace, RankReport, SummaryRow};
use crate::CliError;

fn num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        v.to_string()
    }
}

fn range(b: Bounds) -> String {
    format!("[{},{}]", num(b.lower()), num(b.upper()))
}

fn parameters(config: &OptimizerConfig) -> String {
    let value = match config {
        OptimizerConfig::Ga(c) => serde_json::to_value(c),
        OptimizerConfig::Pso(c) => serde_json::to_value(c),
        OptimizerConfig::Abc(c) => serde_json::to_value(c),
        OptimizerConfig::Tlbo(c) => serde_json::to_value(c),
        OptimizerConfig::Coa(c) => serde_json::to_value(c),
    }
    .expect("configs serialize");
    let Value::Object(fields) = value else { unreachable!("configs are structs") };
    fields
        .iter()
        .map(|(k, v)| match v {
            Value::Null => format!("{k}=auto"),
            Value::String(s) => format!("{k}={s}"),
            _ => format!("{k}={v}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Prints the function and algorithm registries.
pub fn cmd_list(out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "functions:")?;
    for f in FunctionId::ALL {
        let optimum = f.optimum_value().map(num).unwrap_or_else(|| "0+noise".to_string());
        writeln!(out, "  {}  {}  {}  F*={}", f.name(), range(f.bounds()), f.modality(), optimum)?;
    }
    writeln!(out, "algorithms:")?;
    for a in Algorithm::ALL {
        let config = a.default_config();
        if a == Algorithm::Tlbo {
            writeln!(out, "  {}  (no tunable parameters)  {}", a.name(), parameters(&config))?;
        } else {
            writeln!(out, "  {}  {}", a.name(), parameters(&config))?;
        }
    }
    Ok(())
}

/// Flags of the `run` command; each overrides the configuration file.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated function names.
    #[arg(long, value_delimiter = ',')]
    pub functions: Option<Vec<String>>,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',')]
    pub algos: Option<Vec<String>>,
    /// Decision variables.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Runs per cell.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Evaluations per decision variable.
    #[arg(long)]
    pub budget_per_dim: Option<usize>,
    /// Base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `plain` or `shift_rotated`.
    #[arg(long)]
    pub variant: Option<String>,
    /// Evaluations between trace samples.
    #[arg(long)]
    pub trace_stride: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Skip writing per-run trace files.
    #[arg(long)]
    pub no_traces: bool,
}

impl RunArgs {
    /// Configuration file (or defaults) with the flags applied.
    pub fn resolve(&self, env_seed: Option<&str>) -> Result<CliConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => CliConfig::load(path)?,
            None => CliConfig::default(),
        };
        if let Some(v) = &self.functions {
            c.functions = v.clone();
        }
        if let Some(v) = &self.algos {
            c.algorithms = v.clone();
        }
        if let Some(v) = self.dim {
            c.dimension = v;
        }
        if let Some(v) = self.runs {
            c.runs = v;
        }
        if let Some(v) = self.budget_per_dim {
            c.budget_per_dim = v;
        }
        if let Some(v) = self.seed {
            c.seed = Some(v);
        }
        if let Some(v) = &self.variant {
            c.variant = v.parse::<Variant>().map_err(|e| CliError::Config(e.to_string()))?;
        }
        if let Some(v) = self.trace_stride {
            c.trace_stride = Some(v);
        }
        if let Some(v) = &self.out {
            c.out = v.clone();
        }
        c.seed = Some(c.resolve_seed(env_seed)?);
        Ok(c)
    }
}

/// What `run` produced.
#[derive(Debug)]
pub struct RunOutcome {
    /// Output directory.
    pub out: PathBuf,
    /// Summary rows as written.
    pub rows: Vec<SummaryRow>,
    /// Ranks as written.
    pub ranks: RankReport,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs every cell of a validated plan on `jobs` worker threads. Results are
/// independent of `jobs`.
pub fn execute_plan(plan: &ExperimentPlan, jobs: usize) -> Result<Vec<CellSummary>, CliError> {
    plan.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let tasks: Vec<(usize, usize, usize)> = (0..plan.functions.len())
        .flat_map(|f| (0..plan.algorithms.len()).flat_map(move |a| (0..plan.runs).map(move |r| (f, a, r))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let records = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(f, a, run)| {
                let function = plan.functions[f];
                let config = &plan.algorithms[a];
                run_single(plan, function, config, run).map_err(|source| CliError::Cell {
                    function: function.name().to_string(),
                    algorithm: config.algorithm().name().to_string(),
                    run,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut records = records.into_iter();
    let mut cells = Vec::with_capacity(plan.functions.len() * plan.algorithms.len());
    for &function in &plan.functions {
        for config in &plan.algorithms {
            let runs: Vec<_> = records.by_ref().take(plan.runs).collect();
            let cell = CellSummary::from_runs(function, config.algorithm(), runs).map_err(|source| {
                CliError::Cell {
                    function: function.name().to_string(),
                    algorithm: config.algorithm().name().to_string(),
                    run: 0,
                    source,
                }
            })?;
            cells.push(cell);
        }
    }
    Ok(cells)
}

fn unix_seconds() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// Executes a run and writes `summary.csv`, `ranks.csv`, `traces/` and
/// `run_meta.json`.
pub fn cmd_run(args: &RunArgs) -> Result<RunOutcome, CliError> {
    let env_seed = std::env::var(SEED_ENV).ok();
    let config = args.resolve(env_seed.as_deref())?;
    let plan = config.plan()?;
    let jobs = args.jobs.unwrap_or_else(default_jobs);
    if jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }

    let started = unix_seconds();
    let clock = Instant::now();
    let cells = execute_plan(&plan, jobs)?;
    let elapsed = clock.elapsed().as_secs_f64();

    let out = config.out.clone();
    std::fs::create_dir_all(&out).map_err(CliError::io(&out))?;
    let rows: Vec<SummaryRow> = cells.iter().map(|c| SummaryRow::from_cell(&plan, c)).collect();
    write_summary(&out.join("summary.csv"), &rows)?;
    let ranks = RankReport::from_rows(&rows).map_err(|e| CliError::Runtime(e.to_string()))?;
    ranks.write(&out.join("ranks.csv"))?;

    if !args.no_traces {
        let dir = out.join("traces");
        std::fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;
        for cell in &cells {
            for (run, record) in cell.runs.iter().enumerate() {
                let name = format!("{}_{}_{}.csv", cell.function.name(), cell.algorithm.name(), run);
                write_trace(&dir.join(name), record)?;
            }
        }
    }

    let meta = run_meta(&config, &plan, jobs, started, elapsed)?;
    let meta_path = out.join("run_meta.json");
    let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Runtime(e.to_string()))?;
    std::fs::write(&meta_path, text + "\n").map_err(CliError::io(&meta_path))?;
    Ok(RunOutcome { out, rows, ranks })
}

fn run_meta(
    config: &CliConfig,
    plan: &ExperimentPlan,
    jobs: usize,
    started: f64,
    elapsed: f64,
) -> Result<Value, CliError> {
    let mut transforms = Vec::new();
    if plan.variant == Variant::ShiftRotated {
        for &f in &plan.functions {
            for run in 0..plan.runs {
                let t = plan.transform_for(f, run).map_err(|e| CliError::Runtime(e.to_string()))?;
                if let Some(t) = t {
                    transforms.push(json!({
                        "function": f.name(),
                        "run": run,
                        "fingerprint": format!("{:016x}", t.fingerprint()),
                    }));
                }
            }
        }
    }
    Ok(json!({
        "tool": "metabench",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "base_seed": plan.base_seed,
        "max_ffe": plan.max_ffe(),
        "jobs": jobs,
        "started_unix": started,
        "finished_unix": started + elapsed,
        "elapsed_seconds": elapsed,
        "transforms": transforms,
    }))
}

/// Flags of the `rank` command.
#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    /// A `summary.csv` written by `run`.
    pub summary: PathBuf,
    /// Where to write ranks (default: `ranks.csv` next to the summary).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Recomputes `ranks.csv` from an existing summary.
pub fn cmd_rank(args: &RankArgs) -> Result<(PathBuf, RankReport), CliError> {
    let rows = read_summary(&args.summary)?;
    let report = RankReport::from_rows(&rows)?;
    let out = match &args.out {
        Some(p) => p.clone(),
        None => args.summary.parent().unwrap_or(Path::new(".")).join("ranks.csv"),
    };
    report.write(&out)?;
    Ok((out, report))
}
