//! Artificial bee colony: employed, onlooker and scout phases.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_budget, check_finite, check_population, Population};
use crate::{BudgetExhausted, Draw, Evaluator, Result, RngStream, RunRecord};

/// ABC parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct AbcConfig {
    /// Colony size; half are employed bees, one per food source.
    pub population_size: usize,
    /// Step coefficient of the employed phase.
    pub global_coeff: f64,
    /// Step coefficient of the onlooker phase.
    pub local_coeff: f64,
    /// Cycles without improvement before a source is abandoned;
    /// `None` means `population_size * D / 2`.
    pub limit: Option<usize>,
}

impl Default for AbcConfig {
    fn default() -> Self {
        Self { population_size: 40, global_coeff: 1.0, local_coeff: 1.3, limit: None }
    }
}

impl AbcConfig {
    /// Number of food sources.
    pub fn food_sources(&self) -> usize {
        self.population_size / 2
    }

    /// Abandonment limit at dimension `d`.
    pub fn limit_for(&self, d: usize) -> usize {
        self.limit.unwrap_or(self.population_size * d / 2).max(1)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_population(self.population_size, 4)?;
        check_finite("global_coeff", self.global_coeff)?;
        check_finite("local_coeff", self.local_coeff)
    }
}

/// Nectar amount used by the onlooker roulette (larger is better).
pub(crate) fn nectar(f: f64) -> f64 {
    if f >= 0.0 {
        1.0 / (1.0 + f)
    } else {
        1.0 + f.abs()
    }
}

/// Runs ABC until the budget is spent.
pub fn run_abc(config: &AbcConfig, mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    config.validate()?;
    check_budget(&eval, config.population_size)?;
    let _ = forage(config, &mut eval, rng);
    Ok(eval.finish(false))
}

struct Colony {
    sources: Vec<Vec<f64>>,
    values: Vec<f64>,
    stale: Vec<usize>,
    improved: Vec<bool>,
}

impl Colony {
    /// Moves dimension `j` of source `i` relative to source `k`; greedy.
    fn explore(
        &mut self,
        i: usize,
        coeff: f64,
        eval: &mut Evaluator<'_>,
        rng: &mut RngStream,
        trial: &mut Vec<f64>,
    ) -> Result<(), BudgetExhausted> {
        let n = self.sources.len();
        let k = rng.below_except(n, i);
        let j = rng.below(eval.dimension());
        trial.clear();
        trial.extend_from_slice(&self.sources[i]);
        let xi = trial[j];
        trial[j] = eval.bounds().clamp(xi + coeff * rng.signed() * (xi - self.sources[k][j]));
        let f = eval.evaluate(trial)?;
        if f < self.values[i] {
            self.sources[i].copy_from_slice(trial);
            self.values[i] = f;
            self.improved[i] = true;
        }
        Ok(())
    }
}

fn forage(config: &AbcConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<(), BudgetExhausted> {
    let sn = config.food_sources();
    let limit = config.limit_for(eval.dimension());
    let bounds = eval.bounds();

    // the whole colony scouts once; the best half become food sources
    let mut init = Population::random(config.population_size, eval, rng)?;
    let mut order: Vec<usize> = (0..init.len()).collect();
    order.sort_by(|&a, &b| init.values[a].total_cmp(&init.values[b]));
    order.truncate(sn);
    let mut colony = Colony {
        sources: order.iter().map(|&i| core::mem::take(&mut init.members[i])).collect(),
        values: order.iter().map(|&i| init.values[i]).collect(),
        stale: vec![0; sn],
        improved: vec![false; sn],
    };
    let mut trial = Vec::with_capacity(eval.dimension());
    let mut weights = vec![0.0; sn];

    loop {
        colony.improved.iter_mut().for_each(|f| *f = false);
        for i in 0..sn {
            colony.explore(i, config.global_coeff, eval, rng, &mut trial)?;
        }

        for (w, &f) in weights.iter_mut().zip(&colony.values) {
            *w = nectar(f);
        }
        let total: f64 = weights.iter().sum();
        for _ in 0..sn {
            let i = roulette(&weights, total, rng);
            colony.explore(i, config.local_coeff, eval, rng, &mut trial)?;
        }

        for i in 0..sn {
            colony.stale[i] = if colony.improved[i] { 0 } else { colony.stale[i] + 1 };
        }
        let stalest = (0..sn).max_by_key(|&i| (colony.stale[i], core::cmp::Reverse(i))).unwrap();
        if colony.stale[stalest] >= limit {
            for c in colony.sources[stalest].iter_mut() {
                *c = bounds.lerp(rng.uniform());
            }
            colony.values[stalest] = eval.evaluate(&colony.sources[stalest])?;
            colony.stale[stalest] = 0;
        }
    }
}

fn roulette(weights: &[f64], total: f64, rng: &mut RngStream) -> usize {
    let mut target = rng.uniform() * total;
    for (i, w) in weights.iter().enumerate() {
        target -= w;
        if target < 0.0 {
            return i;
        }
    }
    weights.len() - 1
}
