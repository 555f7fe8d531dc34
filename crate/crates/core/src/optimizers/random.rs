use super::check_budget;
use crate::{uniform_in_bounds, Evaluator, Result, RngStream, RunRecord};

/// Uniform random search: the baseline every metaheuristic should beat.
pub fn run_random_search(mut eval: Evaluator<'_>, rng: &mut RngStream) -> Result<RunRecord> {
    check_budget(&eval, 1)?;
    loop {
        let x = uniform_in_bounds(rng, eval.bounds(), eval.dimension())?;
        if eval.evaluate(&x).is_err() {
            break;
        }
    }
    Ok(eval.finish(false))
}
