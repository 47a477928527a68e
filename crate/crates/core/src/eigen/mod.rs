//! Normalized fixed-point iteration for positive eigenpairs `u = λ𝒯u` with
//! `‖u‖_∞ = α`, plus continuation in `α`.

mod continuation;
mod solver;

pub use continuation::{continuation_in_alpha, ContinuationPoint};
pub use solver::{
    fixed_point_residual, solve, solve_eigenpair, solve_eigenpair_from, solve_fixed_lambda,
    EigenpairResult, IterationRecord, SolverOptions,
};
