//! Five basic population metaheuristics (GA, PSO, ABC, TLBO, COA), twenty
//! box-bounded benchmark functions with optional random shift-rotation, a
//! replicated-run experiment harness and the rank-sum comparison used to order
//! algorithms across a table of functions.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command line
//! and parallel scheduling live in the `metabench` companion crate.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod benchmarks;
mod bounds;
mod error;
mod evaluation;
pub mod harness;
pub mod optimizers;
mod rng;

pub use bounds::{clamp, clamp_in_place, uniform_in_bounds, Bounds};
pub use error::{Error, Result};
pub use evaluation::{
    BudgetExhausted, EvaluationBudget, Evaluator, Objective, RunRecord, TraceSample,
    DEFAULT_BUDGET_PER_DIM,
};
pub use rng::{mix_seed, Draw, RngStream};
