//! Real-coded generational GA with linear rank selection, one-point crossover,
//! single-gene uniform mutation and (mu + lambda) survivor selection.

use alloc::vec::Vec;

use super::{check_budget, check_population, check_unit, detect_collapse, Population};
use crate::{BudgetExhausted, Draw, Evaluator, Result, RngStream, RunRecord};

/// GA parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GaConfig {
    /// Chromosomes kept per generation.
    pub population_size: usize,
    /// Probability that an offspring has one gene re-drawn.
    pub mutation_coeff: f64,
    /// Fraction of the population produced by crossover each generation.
    pub crossover_coeff: f64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self { population_size: 40, mutation_coeff: 0.9, crossover_coeff: 0.9 }
    }
}

impl GaConfig {
    fn pairs(&self) -> usize {
        let crossed = libm::ceil(self.crossover_coeff * self.population_size as f64) as usize;
        crossed.div_ceil(2).max(1)
    }

    /// Offspring (and evaluations) per generation.
    pub fn offspring_per_generation(&self) -> usize {
        2 * self.pairs()
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_population(self.population_size, 2)?;
        check_unit("mutation_coeff", self.mutation_coeff)?;
        check_unit("crossover_coeff", self.crossover_coeff)
    }
}

/// Runs the GA until the budget is spent or the population collapses.
pub fn run_ga(config: &GaConfig, mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    config.validate()?;
    check_budget(&eval, config.population_size)?;
    let collapsed = evolve(config, &mut eval, rng).is_ok();
    Ok(eval.finish(collapsed))
}

/// Returns `Ok` only when the population collapsed.
fn evolve(config: &GaConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<(), BudgetExhausted> {
    let n = config.population_size;
    let d = eval.dimension();
    let bounds = eval.bounds();
    let mut pop = Population::random(n, eval, rng)?;
    sort_by_value(&mut pop);
    // weight of sorted position k is n - k
    let total_weight = (n * (n + 1) / 2) as f64;
    loop {
        if detect_collapse(&pop.members) {
            return Ok(());
        }
        let mut children = Vec::with_capacity(config.offspring_per_generation());
        for _ in 0..config.pairs() {
            let a = &pop.members[select_rank(rng, n, total_weight)];
            let b = &pop.members[select_rank(rng, n, total_weight)];
            let (mut c1, mut c2) = crossover(a, b, rng);
            for child in [&mut c1, &mut c2] {
                if rng.uniform() < config.mutation_coeff {
                    let j = rng.below(d);
                    child[j] = bounds.lerp(rng.uniform());
                }
            }
            children.push(c1);
            children.push(c2);
        }
        for child in children {
            let v = eval.evaluate(&child)?;
            pop.members.push(child);
            pop.values.push(v);
        }
        sort_by_value(&mut pop);
        pop.members.truncate(n);
        pop.values.truncate(n);
    }
}

fn sort_by_value(pop: &mut Population) {
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&i, &j| pop.values[i].total_cmp(&pop.values[j]));
    pop.members = order.iter().map(|&i| core::mem::take(&mut pop.members[i])).collect();
    pop.values = order.iter().map(|&i| pop.values[i]).collect();
}

/// Index into a best-first population, chosen with probability proportional
/// to `n - k`.
fn select_rank(rng: &mut RngStream, n: usize, total_weight: f64) -> usize {
    let mut target = rng.uniform() * total_weight;
    for k in 0..n {
        target -= (n - k) as f64;
        if target < 0.0 {
            return k;
        }
    }
    n - 1
}

fn crossover(a: &[f64], b: &[f64], rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
    let d = a.len();
    if d < 2 {
        return (b.to_vec(), a.to_vec());
    }
    let cut = 1 + rng.below(d - 1);
    let mut c1 = Vec::with_capacity(d);
    c1.extend_from_slice(&a[..cut]);
    c1.extend_from_slice(&b[cut..]);
    let mut c2 = Vec::with_capacity(d);
    c2.extend_from_slice(&b[..cut]);
    c2.extend_from_slice(&a[cut..]);
    (c1, c2)
}
