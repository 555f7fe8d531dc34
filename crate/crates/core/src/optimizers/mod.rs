//! The five metaheuristics, their configurations and the shared run plumbing.
//!
//! Every optimizer receives an [`Evaluator`] (objective + budget + trace) and
//! the run's [`RngStream`], loops until the budget is spent or its population
//! collapses, and hands back the evaluator's [`RunRecord`].

mod abc;
mod coa;
mod ga;
mod pso;
mod random;
mod tlbo;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use abc::{run_abc, AbcConfig};
pub use coa::{egg_laying_radius, run_coa, CoaConfig};
pub use ga::{run_ga, GaConfig};
pub use pso::{run_pso, CoefficientDraw, PsoConfig};
pub use random::run_random_search;
pub use tlbo::{run_tlbo, TlboConfig};

use crate::{
    uniform_in_bounds, BudgetExhausted, Error, Evaluator, Result, RngStream, RunRecord,
};

/// Largest per-dimension spread at which a population counts as collapsed.
pub const COLLAPSE_SPREAD: f64 = 1e-12;

/// The five studied algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    /// Genetic algorithm.
    Ga,
    /// Particle swarm optimization.
    Pso,
    /// Artificial bee colony.
    Abc,
    /// Teaching-learning-based optimization.
    Tlbo,
    /// Cuckoo optimization algorithm.
    Coa,
}

impl Algorithm {
    /// All algorithms in table order.
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Ga, Algorithm::Pso, Algorithm::Abc, Algorithm::Tlbo, Algorithm::Coa];

    /// Registry name.
    pub const fn name(self) -> &'static str {
        match self {
            Algorithm::Ga => "ga",
            Algorithm::Pso => "pso",
            Algorithm::Abc => "abc",
            Algorithm::Tlbo => "tlbo",
            Algorithm::Coa => "coa",
        }
    }

    /// Stable index (used for seeding).
    pub fn index(self) -> usize {
        self as usize
    }

    /// Configuration with the tuned default parameters.
    pub fn default_config(self) -> OptimizerConfig {
        match self {
            Algorithm::Ga => OptimizerConfig::Ga(GaConfig::default()),
            Algorithm::Pso => OptimizerConfig::Pso(PsoConfig::default()),
            Algorithm::Abc => OptimizerConfig::Abc(AbcConfig::default()),
            Algorithm::Tlbo => OptimizerConfig::Tlbo(TlboConfig::default()),
            Algorithm::Coa => OptimizerConfig::Coa(CoaConfig::default()),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Per-algorithm parameter record.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "algorithm", rename_all = "lowercase"))]
#[allow(missing_docs)]
pub enum OptimizerConfig {
    Ga(GaConfig),
    Pso(PsoConfig),
    Abc(AbcConfig),
    Tlbo(TlboConfig),
    Coa(CoaConfig),
}

impl OptimizerConfig {
    /// Which algorithm this configures.
    pub fn algorithm(&self) -> Algorithm {
        match self {
            OptimizerConfig::Ga(_) => Algorithm::Ga,
            OptimizerConfig::Pso(_) => Algorithm::Pso,
            OptimizerConfig::Abc(_) => Algorithm::Abc,
            OptimizerConfig::Tlbo(_) => Algorithm::Tlbo,
            OptimizerConfig::Coa(_) => Algorithm::Coa,
        }
    }

    /// Individuals kept between iterations.
    pub fn population_size(&self) -> usize {
        match self {
            OptimizerConfig::Ga(c) => c.population_size,
            OptimizerConfig::Pso(c) => c.population_size,
            OptimizerConfig::Abc(c) => c.population_size,
            OptimizerConfig::Tlbo(c) => c.population_size,
            OptimizerConfig::Coa(c) => c.population_size,
        }
    }

    /// Typical evaluations spent per iteration, used as the trace stride.
    pub fn ffe_per_iteration(&self) -> usize {
        match self {
            OptimizerConfig::Ga(c) => c.offspring_per_generation(),
            OptimizerConfig::Pso(c) => c.population_size,
            OptimizerConfig::Abc(c) => c.population_size,
            OptimizerConfig::Tlbo(c) => 2 * c.population_size,
            OptimizerConfig::Coa(c) => c.population_size * (1 + (c.egg_min + c.egg_max) / 2),
        }
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            OptimizerConfig::Ga(c) => c.validate(),
            OptimizerConfig::Pso(c) => c.validate(),
            OptimizerConfig::Abc(c) => c.validate(),
            OptimizerConfig::Tlbo(c) => c.validate(),
            OptimizerConfig::Coa(c) => c.validate(),
        }
    }

    /// Runs the configured optimizer.
    pub fn run(&self, eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
        match self {
            OptimizerConfig::Ga(c) => run_ga(c, eval, rng),
            OptimizerConfig::Pso(c) => run_pso(c, eval, rng),
            OptimizerConfig::Abc(c) => run_abc(c, eval, rng),
            OptimizerConfig::Tlbo(c) => run_tlbo(c, eval, rng),
            OptimizerConfig::Coa(c) => run_coa(c, eval, rng),
        }
    }
}

/// True iff every coordinate's spread across `population` is below
/// [`COLLAPSE_SPREAD`].
pub fn detect_collapse<P: AsRef<[f64]>>(population: &[P]) -> bool {
    let Some(first) = population.first() else {
        return true;
    };
    (0..first.as_ref().len()).all(|j| {
        let (lo, hi) = population.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let v = p.as_ref()[j];
            (lo.min(v), hi.max(v))
        });
        hi - lo < COLLAPSE_SPREAD
    })
}

pub(crate) fn check_population(population: usize, min: usize) -> Result<()> {
    if population < min {
        Err(Error::PopulationTooSmall(population))
    } else {
        Ok(())
    }
}

pub(crate) fn check_budget(eval: &Evaluator<'_>, population: usize) -> Result<()> {
    let budget = eval.budget().remaining();
    if budget < population {
        Err(Error::BudgetTooSmall { budget, population })
    } else {
        Ok(())
    }
}

pub(crate) fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: "must lie in [0, 1]" })
    }
}

pub(crate) fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: "must be finite" })
    }
}

/// Population members with their objective values.
pub(crate) struct Population {
    pub members: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

impl Population {
    /// `n` uniform random members, each evaluated once.
    pub fn random(
        n: usize,
        eval: &mut Evaluator<'_>,
        rng: &mut RngStream,
    ) -> Result<Self, BudgetExhausted> {
        let mut members = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            // dimension >= 1 is guaranteed by the objective
            let x = uniform_in_bounds(rng, eval.bounds(), eval.dimension())
                .expect("objective dimension is positive");
            values.push(eval.evaluate(&x)?);
            members.push(x);
        }
        Ok(Self { members, values })
    }

    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v < self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}
