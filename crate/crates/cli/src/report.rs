//! CSV and JSON outputs. Every float is written in Rust's shortest
//! round-trip scientific form, so re-reading a file recovers the exact value.

use std::collections::BTreeMap;
use std::path::Path;

use metabench_core::analysis::RankTable;
use metabench_core::benchmarks::{error_from_optimum, ObjectiveSpec};
use metabench_core::harness::{CellSummary, ExperimentPlan};
use metabench_core::RunRecord;
use serde::Deserialize;

use crate::CliError;

/// Header of `summary.csv`.
pub const SUMMARY_HEADER: [&str; 9] =
    ["function", "algorithm", "variant", "dim", "runs", "mean", "sd", "mean_error", "ffe_budget"];

/// Footer label for rank-sums in `ranks.csv`.
pub const RANK_SUM: &str = "rank_sum";
/// Footer label for the final ordering in `ranks.csv`.
pub const LEX_RANK: &str = "lex_rank";

/// `{:e}` formatting.
pub fn sci(v: f64) -> String {
    format!("{v:e}")
}

/// One line of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SummaryRow {
    /// Function name.
    pub function: String,
    /// Algorithm name.
    pub algorithm: String,
    /// `plain` or `shift_rotated`.
    pub variant: String,
    /// Dimension.
    pub dim: usize,
    /// Runs behind the statistics.
    pub runs: usize,
    /// Mean best value.
    pub mean: f64,
    /// Sample standard deviation.
    pub sd: f64,
    /// Mean distance from the known optimum value, when there is one.
    pub mean_error: Option<f64>,
    /// Evaluations allowed per run.
    pub ffe_budget: usize,
}

impl SummaryRow {
    /// Row for one harness cell.
    pub fn from_cell(plan: &ExperimentPlan, cell: &CellSummary) -> Self {
        let mean_error = ObjectiveSpec::new(cell.function, plan.dimension)
            .ok()
            .and_then(|spec| error_from_optimum(&spec, cell.mean).ok());
        Self {
            function: cell.function.name().to_string(),
            algorithm: cell.algorithm.name().to_string(),
            variant: plan.variant.name().to_string(),
            dim: plan.dimension,
            runs: cell.runs.len(),
            mean: cell.mean,
            sd: cell.sd,
            mean_error,
            ffe_budget: plan.max_ffe(),
        }
    }

    fn record(&self) -> [String; 9] {
        [
            self.function.clone(),
            self.algorithm.clone(),
            self.variant.clone(),
            self.dim.to_string(),
            self.runs.to_string(),
            sci(self.mean),
            sci(self.sd),
            self.mean_error.map(sci).unwrap_or_default(),
            self.ffe_budget.to_string(),
        ]
    }
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>, CliError> {
    let file = std::fs::File::create(path).map_err(CliError::io(path))?;
    Ok(csv::Writer::from_writer(file))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::Runtime(format!("{}: {e}", path.display()))
}

/// Writes `summary.csv`.
pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<(), CliError> {
    let mut w = writer(path)?;
    w.write_record(SUMMARY_HEADER).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_err(path))?;
    }
    w.flush().map_err(CliError::io(path))
}

/// Reads `summary.csv`; any malformed content is a configuration error.
pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>, CliError> {
    let bad = |e: csv::Error| CliError::Config(format!("{}: {e}", path.display()));
    let mut r = csv::Reader::from_path(path).map_err(bad)?;
    let header = r.headers().map_err(bad)?.clone();
    if header.iter().ne(SUMMARY_HEADER) {
        return Err(CliError::Config(format!(
            "{}: expected header `{}`",
            path.display(),
            SUMMARY_HEADER.join(",")
        )));
    }
    let rows = r.deserialize().collect::<Result<Vec<SummaryRow>, _>>().map_err(bad)?;
    if rows.is_empty() {
        return Err(CliError::Config(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

/// Ranks computed from summary rows, with names kept in first-seen order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    /// Functions in input order.
    pub functions: Vec<String>,
    /// Algorithms in input order.
    pub algorithms: Vec<String>,
    /// The rank arithmetic.
    pub table: RankTable<String, String>,
}

impl RankReport {
    /// Ranks by mean. Rows must share a single variant and every function
    /// must report every algorithm.
    pub fn from_rows(rows: &[SummaryRow]) -> Result<Self, CliError> {
        if let Some(first) = rows.first() {
            if let Some(other) = rows.iter().find(|r| r.variant != first.variant) {
                return Err(CliError::Config(format!(
                    "summary mixes variants `{}` and `{}`; rank them separately",
                    first.variant, other.variant
                )));
            }
        }
        let mut functions: Vec<String> = Vec::new();
        let mut algorithms: Vec<String> = Vec::new();
        let mut seen = BTreeMap::new();
        for r in rows {
            if !functions.contains(&r.function) {
                functions.push(r.function.clone());
            }
            if !algorithms.contains(&r.algorithm) {
                algorithms.push(r.algorithm.clone());
            }
            if seen.insert((r.function.clone(), r.algorithm.clone()), ()).is_some() {
                return Err(CliError::Config(format!(
                    "duplicate row for function `{}`, algorithm `{}`",
                    r.function, r.algorithm
                )));
            }
        }
        let table =
            RankTable::from_means(rows.iter().map(|r| (r.function.clone(), r.algorithm.clone(), r.mean)))
                .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self { functions, algorithms, table })
    }

    /// Rank-sums in algorithm order.
    pub fn rank_sums(&self) -> Vec<usize> {
        self.algorithms.iter().map(|a| self.table.rank_sums[a]).collect()
    }

    /// Final ordering in algorithm order.
    pub fn lexicographic_ranks(&self) -> Vec<usize> {
        self.algorithms.iter().map(|a| self.table.lexicographic_ranks[a]).collect()
    }

    /// Writes `ranks.csv`: one row per (function, algorithm), then one
    /// `rank_sum` and one `lex_rank` row per algorithm.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = writer(path)?;
        w.write_record(["function", "algorithm", "rank"]).map_err(csv_err(path))?;
        for f in &self.functions {
            for a in &self.algorithms {
                let rank = self.table.per_function_ranks[f][a].to_string();
                w.write_record([f.as_str(), a.as_str(), rank.as_str()]).map_err(csv_err(path))?;
            }
        }
        for (label, values) in [(RANK_SUM, self.rank_sums()), (LEX_RANK, self.lexicographic_ranks())] {
            for (a, v) in self.algorithms.iter().zip(values) {
                w.write_record([label, a.as_str(), v.to_string().as_str()]).map_err(csv_err(path))?;
            }
        }
        w.flush().map_err(CliError::io(path))
    }
}

/// Writes one convergence trace (`ffe,best_so_far`).
pub fn write_trace(path: &Path, record: &RunRecord) -> Result<(), CliError> {
    let mut w = writer(path)?;
    w.write_record(["ffe", "best_so_far"]).map_err(csv_err(path))?;
    for s in &record.trace {
        w.write_record([s.ffe.to_string(), sci(s.best_so_far)]).map_err(csv_err(path))?;
    }
    w.flush().map_err(CliError::io(path))
}
