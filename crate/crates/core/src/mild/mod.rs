//! Time grids, product integration of the weakly singular Volterra term,
//! the solution operator `𝒯` and an L1 Caputo residual.

mod benchmark;
mod caputo;
mod grid;
mod operator;
mod trajectory;
mod volterra;
mod weights;

pub use benchmark::{
    benchmark_solution, convergence_study, graded_gamma, linear_benchmark, BenchmarkRun,
    ConvergenceRow,
};
pub use caputo::{caputo_l1_residual, CaputoResidual};
pub use grid::{GridKind, TimeGrid};
pub use operator::{solution_operator, OperatorParts, SolutionOperator};
pub use trajectory::Trajectory;
pub use volterra::{volterra_apply, KernelRule, VolterraOperator};
pub use weights::{build_weights, VolterraWeights};
