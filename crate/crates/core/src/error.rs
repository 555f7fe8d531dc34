use alloc::string::String;

/// Errors reported by the workbench.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Box bounds with `lower >= upper` or a non-finite end point.
    #[error("invalid bounds [{lower}, {upper}]")]
    InvalidBounds {
        /// Lower end point.
        lower: f64,
        /// Upper end point.
        upper: f64,
    },
    /// A dimension of zero.
    #[error("dimension must be at least 1")]
    InvalidDimension,
    /// A vector whose length differs from the instance dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch {
        /// Instance dimension.
        expected: usize,
        /// Length that was supplied.
        actual: usize,
    },
    /// Gram-Schmidt kept producing dependent columns.
    #[error("rotation matrix degenerate after {0} attempts")]
    DegenerateRotation(usize),
    /// The function has no stated optimum value.
    #[error("function `{0}` has no known optimum value")]
    MissingOptimum(&'static str),
    /// A population too small for the algorithm's operators.
    #[error("population size {0} is too small (need at least 2)")]
    PopulationTooSmall(usize),
    /// The evaluation budget cannot cover the initial population.
    #[error("budget of {budget} evaluations is smaller than the population size {population}")]
    BudgetTooSmall {
        /// Maximum number of evaluations.
        budget: usize,
        /// Population size that must be evaluated first.
        population: usize,
    },
    /// An optimizer parameter outside its valid range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// What is wrong with it.
        reason: &'static str,
    },
    /// Statistics over an empty sample.
    #[error("cannot summarize an empty sample")]
    EmptySample,
    /// A NaN where an ordered value is required.
    #[error("NaN value cannot be ranked")]
    NanValue,
    /// Name not present in the function registry.
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    /// Name not present in the algorithm registry.
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    /// A function row without a rank for the requested algorithm.
    #[error("no rank recorded for function `{function}`")]
    MissingRank {
        /// Function lacking the entry.
        function: String,
    },
    /// An experiment plan violating its invariants.
    #[error("invalid experiment plan: {0}")]
    InvalidPlan(&'static str),
}

/// Result alias using [`Error`].
pub type Result<T, E = Error> = core::result::Result<T, E>;
