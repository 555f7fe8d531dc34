//! Teaching-learning-based optimization: teacher phase then learner phase,
//! both with greedy acceptance. No tunable parameters beyond class size.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_budget, check_population, Population};
use crate::{BudgetExhausted, Draw, Evaluator, Result, RngStream, RunRecord};

/// TLBO parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TlboConfig {
    /// Learners. Each costs two evaluations per iteration.
    pub population_size: usize,
}

impl Default for TlboConfig {
    fn default() -> Self {
        Self { population_size: 20 }
    }
}

impl TlboConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        check_population(self.population_size, 2)
    }
}

/// Runs TLBO until the budget is spent.
pub fn run_tlbo(config: &TlboConfig, mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    config.validate()?;
    check_budget(&eval, config.population_size)?;
    let _ = teach(config, &mut eval, rng);
    Ok(eval.finish(false))
}

fn teach(config: &TlboConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<(), BudgetExhausted> {
    let n = config.population_size;
    let d = eval.dimension();
    let bounds = eval.bounds();
    let mut class = Population::random(n, eval, rng)?;
    let mut mean = vec![0.0; d];
    let mut trial: Vec<f64> = vec![0.0; d];

    loop {
        let teacher = class.members[class.best_index()].clone();
        mean.iter_mut().for_each(|m| *m = 0.0);
        for x in &class.members {
            for (m, v) in mean.iter_mut().zip(x) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n as f64);

        for i in 0..n {
            let tf = if rng.uniform() < 0.5 { 1.0 } else { 2.0 };
            for j in 0..d {
                let step = rng.uniform() * (teacher[j] - tf * mean[j]);
                trial[j] = bounds.clamp(class.members[i][j] + step);
            }
            accept(&mut class, i, &trial, eval)?;
        }

        for i in 0..n {
            let k = rng.below_except(n, i);
            let sign = if class.values[i] < class.values[k] { 1.0 } else { -1.0 };
            for j in 0..d {
                let xi = class.members[i][j];
                let step = rng.uniform() * sign * (xi - class.members[k][j]);
                trial[j] = bounds.clamp(xi + step);
            }
            accept(&mut class, i, &trial, eval)?;
        }
    }
}

fn accept(class: &mut Population, i: usize, trial: &[f64], eval: &mut Evaluator<'_>) -> Result<(), BudgetExhausted> {
    let f = eval.evaluate(trial)?;
    if f < class.values[i] {
        class.members[i].copy_from_slice(trial);
        class.values[i] = f;
    }
    Ok(())
}
