//! Inertia-weight particle swarm with asynchronous personal/global best updates.
//! Positions are clamped to the box and a clamped coordinate's velocity is
//! reversed.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_budget, check_finite, check_population, Population};
use crate::{BudgetExhausted, Draw, Evaluator, Result, RngStream, RunRecord};

/// Distribution of the random factors multiplying `c1` and `c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CoefficientDraw {
    /// Uniform in `[-1, 1)`. Zero-mean attraction makes the swarm diverge
    /// to the box walls at the default inertia.
    Signed,
    /// Uniform in `[0, 1)`.
    #[default]
    Unit,
}

/// PSO parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PsoConfig {
    /// Particles.
    pub population_size: usize,
    /// Personal coefficient.
    pub c1: f64,
    /// Global coefficient.
    pub c2: f64,
    /// Inertia factor applied to the previous velocity.
    pub inertia: f64,
    /// How `phi1 = c1 r1` and `phi2 = c2 r2` draw `r`.
    pub phi_draw: CoefficientDraw,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self { population_size: 40, c1: 2.0, c2: 2.0, inertia: 0.25, phi_draw: CoefficientDraw::Unit }
    }
}

impl PsoConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        check_population(self.population_size, 2)?;
        check_finite("c1", self.c1)?;
        check_finite("c2", self.c2)?;
        check_finite("inertia", self.inertia)
    }
}

/// Runs PSO until the budget is spent.
pub fn run_pso(config: &PsoConfig, mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    config.validate()?;
    check_budget(&eval, config.population_size)?;
    let _ = fly(config, &mut eval, rng);
    Ok(eval.finish(false))
}

fn fly(config: &PsoConfig, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<(), BudgetExhausted> {
    let d = eval.dimension();
    let bounds = eval.bounds();
    let vmax = bounds.width();
    let draw = |rng: &mut RngStream| match config.phi_draw {
        CoefficientDraw::Signed => rng.signed(),
        CoefficientDraw::Unit => rng.uniform(),
    };

    let Population { members: mut positions, values } = Population::random(config.population_size, eval, rng)?;
    let mut velocities = vec![vec![0.0; d]; positions.len()];
    let mut personal: Vec<Vec<f64>> = positions.clone();
    let mut personal_value = values;
    let mut g = 0;
    for (i, v) in personal_value.iter().enumerate() {
        if *v < personal_value[g] {
            g = i;
        }
    }
    let mut global = personal[g].clone();
    let mut global_value = personal_value[g];

    loop {
        for i in 0..positions.len() {
            let x = &mut positions[i];
            let v = &mut velocities[i];
            let p = &personal[i];
            for j in 0..d {
                let phi1 = config.c1 * draw(rng);
                let phi2 = config.c2 * draw(rng);
                let nv = config.inertia * v[j] + phi1 * (p[j] - x[j]) + phi2 * (global[j] - x[j]);
                v[j] = nv.clamp(-vmax, vmax);
                let moved = x[j] + v[j];
                x[j] = bounds.clamp(moved);
                if x[j] != moved {
                    // bounce off the wall; keeping the outward velocity pins
                    // whole swarms to the bound in that coordinate
                    v[j] = -v[j];
                }
            }
            let f = eval.evaluate(x)?;
            if f < personal_value[i] {
                personal_value[i] = f;
                personal[i].copy_from_slice(x);
                if f < global_value {
                    global_value = f;
                    global.copy_from_slice(x);
                }
            }
        }
    }
}
