//! The single choke point through which every optimizer evaluates the
//! objective: budget accounting, best-so-far tracking and trace sampling.

use alloc::vec::Vec;

use crate::{Bounds, RngStream};

/// Evaluations allowed per decision variable.
pub const DEFAULT_BUDGET_PER_DIM: usize = 1333;

/// A box-bounded minimization problem.
pub trait Objective {
    /// Number of decision variables.
    fn dimension(&self) -> usize;
    /// Box applied to every coordinate.
    fn bounds(&self) -> Bounds;
    /// Objective value at `x`; `noise` is only consulted by noisy functions.
    fn evaluate(&self, x: &[f64], noise: &mut RngStream) -> f64;
}

impl<O: Objective + ?Sized> Objective for &O {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn bounds(&self) -> Bounds {
        (**self).bounds()
    }
    fn evaluate(&self, x: &[f64], noise: &mut RngStream) -> f64 {
        (**self).evaluate(x, noise)
    }
}

/// Signals that the run has spent its last evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExhausted;

/// Fitness-function-evaluation (FFE) budget of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluationBudget {
    max_ffe: usize,
    used_ffe: usize,
}

impl EvaluationBudget {
    /// Fresh budget of `max_ffe` evaluations.
    pub fn new(max_ffe: usize) -> Self {
        Self { max_ffe, used_ffe: 0 }
    }

    /// `per_dim * dimension` evaluations.
    pub fn for_dimension(dimension: usize, per_dim: usize) -> Self {
        Self::new(per_dim * dimension)
    }

    /// Ceiling on evaluations.
    pub fn max_ffe(&self) -> usize {
        self.max_ffe
    }

    /// Evaluations spent so far.
    pub fn used_ffe(&self) -> usize {
        self.used_ffe
    }

    /// Evaluations left.
    pub fn remaining(&self) -> usize {
        self.max_ffe - self.used_ffe
    }

    /// Charges one evaluation.
    #[inline]
    pub fn consume(&mut self) -> Result<(), BudgetExhausted> {
        if self.used_ffe < self.max_ffe {
            self.used_ffe += 1;
            Ok(())
        } else {
            Err(BudgetExhausted)
        }
    }
}

/// Best-so-far value after `ffe` evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceSample {
    /// Cumulative evaluations at sample time.
    pub ffe: usize,
    /// Best objective value observed up to `ffe`.
    pub best_so_far: f64,
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunRecord {
    /// Position of the best evaluation.
    pub best_solution: Vec<f64>,
    /// Value of the best evaluation.
    pub best_value: f64,
    /// Evaluations spent.
    pub ffe_used: usize,
    /// True when the population collapsed before the budget ran out.
    pub terminated_early: bool,
    /// Convergence trace, strictly increasing in `ffe`.
    pub trace: Vec<TraceSample>,
}

/// Wraps an objective with a budget and records the run's progress.
pub struct Evaluator<'a> {
    objective: &'a dyn Objective,
    bounds: Bounds,
    dimension: usize,
    budget: EvaluationBudget,
    noise: RngStream,
    trace_stride: usize,
    best_solution: Vec<f64>,
    best_value: f64,
    trace: Vec<TraceSample>,
}

impl<'a> Evaluator<'a> {
    /// `noise` feeds noisy objectives and is never shared with the optimizer.
    pub fn new(objective: &'a dyn Objective, budget: EvaluationBudget, noise: RngStream) -> Self {
        Self {
            bounds: objective.bounds(),
            dimension: objective.dimension(),
            objective,
            budget,
            noise,
            trace_stride: 1,
            best_solution: Vec::new(),
            best_value: f64::INFINITY,
            trace: Vec::new(),
        }
    }

    /// Records a trace sample every `stride` evaluations (and at the end).
    pub fn with_trace_stride(mut self, stride: usize) -> Self {
        self.trace_stride = stride.max(1);
        self
    }

    /// Decision-space dimension.
    #[inline]
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Decision-space bounds.
    #[inline]
    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Budget state.
    pub fn budget(&self) -> EvaluationBudget {
        self.budget
    }

    /// Best value seen so far (`+inf` before the first evaluation).
    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    /// Charges one evaluation and returns the objective value at `x`.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, BudgetExhausted> {
        self.budget.consume()?;
        let value = self.objective.evaluate(x, &mut self.noise);
        if value < self.best_value || self.best_solution.is_empty() {
            self.best_value = value;
            self.best_solution.clear();
            self.best_solution.extend_from_slice(x);
        }
        if self.budget.used_ffe() % self.trace_stride == 0 {
            self.sample();
        }
        Ok(value)
    }

    fn sample(&mut self) {
        let ffe = self.budget.used_ffe();
        if self.trace.last().is_none_or(|s| s.ffe < ffe) {
            self.trace.push(TraceSample { ffe, best_so_far: self.best_value });
        }
    }

    /// Closes the trace and produces the run record.
    pub fn finish(mut self, terminated_early: bool) -> RunRecord {
        if self.budget.used_ffe() > 0 {
            self.sample();
        }
        RunRecord {
            best_solution: self.best_solution,
            best_value: self.best_value,
            ffe_used: self.budget.used_ffe(),
            terminated_early,
            trace: self.trace,
        }
    }
}
