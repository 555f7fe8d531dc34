//! Cuckoo optimization algorithm with a single cluster: egg laying inside a
//! per-cuckoo radius, egg culling, society cap and migration toward the best
//! habitat.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{check_budget, check_finite, check_population, check_unit, detect_collapse, Population};
use crate::{Bounds, BudgetExhausted, Draw, Error, Evaluator, Result, RngStream, RunRecord};

/// COA parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct CoaConfig {
    /// Society cap: habitats kept after each generation.
    pub population_size: usize,
    /// Egg-laying radius coefficient `alpha`.
    pub elr_coeff: f64,
    /// Migration coefficient is `migration_scale * rand(0, 1)`, drawn per habitat.
    pub migration_scale: f64,
    /// Number of clusters; only a single cluster is supported.
    pub clusters: usize,
    /// Fewest eggs a cuckoo lays.
    pub egg_min: usize,
    /// Most eggs a cuckoo lays.
    pub egg_max: usize,
    /// Eggs closer than this (max-coordinate distance) to another habitat or
    /// egg are killed without evaluation.
    pub egg_kill_epsilon: f64,
    /// Fraction of the worst evaluated eggs killed each generation.
    pub egg_kill_fraction: f64,
}

impl Default for CoaConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            elr_coeff: 1.0,
            migration_scale: PI / 6.0,
            clusters: 1,
            egg_min: 2,
            egg_max: 5,
            egg_kill_epsilon: 1e-8,
            egg_kill_fraction: 0.1,
        }
    }
}

impl CoaConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        check_population(self.population_size, 2)?;
        check_finite("elr_coeff", self.elr_coeff)?;
        check_finite("migration_scale", self.migration_scale)?;
        check_finite("egg_kill_epsilon", self.egg_kill_epsilon)?;
        check_unit("egg_kill_fraction", self.egg_kill_fraction)?;
        if self.clusters != 1 {
            return Err(Error::InvalidParameter { name: "clusters", reason: "only 1 is supported" });
        }
        if self.egg_min == 0 || self.egg_min > self.egg_max {
            return Err(Error::InvalidParameter { name: "egg_min", reason: "need 1 <= egg_min <= egg_max" });
        }
        Ok(())
    }
}

/// `alpha * eggs / total_eggs * (upper - lower)`.
pub fn egg_laying_radius(alpha: f64, eggs: usize, total_eggs: usize, bounds: Bounds) -> f64 {
    alpha * eggs as f64 / total_eggs as f64 * bounds.width()
}

/// Runs COA until the budget is spent or the society collapses.
pub fn run_coa(config: &CoaConfig, mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    config.validate()?;
    check_budget(&eval, config.population_size)?;
    let collapsed = breed(config, &mut eval, rng).is_ok();
    Ok(eval.finish(collapsed))
}

fn chebyshev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
}

/// Returns `Ok` only when the society collapsed.
fn breed(config: &CoaConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<(), BudgetExhausted> {
    let cap = config.population_size;
    let d = eval.dimension();
    let bounds = eval.bounds();
    let mut society = Population::random(cap, eval, rng)?;

    loop {
        if detect_collapse(&society.members) {
            return Ok(());
        }

        let counts: Vec<usize> = (0..society.len())
            .map(|_| config.egg_min + rng.below(config.egg_max - config.egg_min + 1))
            .collect();
        let total: usize = counts.iter().sum();
        let mut eggs: Vec<Vec<f64>> = Vec::with_capacity(total);
        for (habitat, &count) in society.members.iter().zip(&counts) {
            let radius = egg_laying_radius(config.elr_coeff, count, total, bounds);
            for _ in 0..count {
                let reach = radius * rng.uniform();
                let egg: Vec<f64> =
                    habitat.iter().map(|&h| bounds.clamp(h + reach * rng.signed())).collect();
                let duplicate = society
                    .members
                    .iter()
                    .chain(eggs.iter())
                    .any(|other| chebyshev(other, &egg) < config.egg_kill_epsilon);
                if !duplicate {
                    eggs.push(egg);
                }
            }
        }

        let mut hatched: Vec<(f64, Vec<f64>)> = Vec::with_capacity(eggs.len());
        for egg in eggs {
            let v = eval.evaluate(&egg)?;
            hatched.push((v, egg));
        }
        hatched.sort_by(|a, b| a.0.total_cmp(&b.0));
        let killed = libm::floor(config.egg_kill_fraction * hatched.len() as f64) as usize;
        hatched.truncate(hatched.len() - killed);
        for (v, egg) in hatched {
            society.members.push(egg);
            society.values.push(v);
        }

        let mut order: Vec<usize> = (0..society.len()).collect();
        order.sort_by(|&a, &b| society.values[a].total_cmp(&society.values[b]));
        order.truncate(cap);
        society.members = order.iter().map(|&i| core::mem::take(&mut society.members[i])).collect();
        society.values = order.iter().map(|&i| society.values[i]).collect();

        // goal habitat is index 0 after the sort
        let (goal, rest) = society.members.split_first_mut().expect("society is non-empty");
        for (habitat, value) in rest.iter_mut().zip(society.values[1..].iter_mut()) {
            let f = config.migration_scale * rng.uniform();
            for j in 0..d {
                habitat[j] = bounds.clamp(habitat[j] + f * rng.uniform() * (goal[j] - habitat[j]));
            }
            *value = eval.evaluate(habitat)?;
        }
    }
}
