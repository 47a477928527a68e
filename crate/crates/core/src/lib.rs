//! Mild solutions and positive eigenpairs of Caputo fractional evolution
//! equations with nonlocal initial conditions.
//!
//! The problem solved is
//!
//! ```text
//! D^β u(t) = A u(t) + λ F(t, u(t)),   t ∈ (0, 1],
//! u(0)     = λ H[u],
//! ```
//!
//! on `V = L²(0, π)` with `A` the Dirichlet Laplacian, realized in the sine
//! basis. Solutions are sought in mild form
//!
//! ```text
//! u(t) = λ S_β(t) H[u] + λ ∫_0^t (t − r)^{β−1} T_β(t − r) F(r, u(r)) dr
//! ```
//!
//! where `S_β` and `T_β` act on mode `n` by `E_β(−μ_n t^β)` and
//! `E_{β,β}(−μ_n t^β)`.
//!
//! Layout:
//!
//! - [`specfun`]: Gamma, erfc, Mittag-Leffler functions, the density `k_β`.
//! - [`lattice`]: sine-basis fields, the heat semigroup, `S_β`, `T_β`, cones.
//! - [`mild`]: time grids, product integration, the solution operator `𝒯`,
//!   and an L1 Caputo residual.
//! - [`problem`]: nonlinearities, nonlocal functionals, hypothesis audit.
//! - [`eigen`]: normalized fixed-point iteration for `u = λ 𝒯 u`.
//! - [`cli`]: config parsing, subcommands and deterministic reports.

pub mod cli;
pub mod eigen;
pub mod error;
pub mod lattice;
pub mod mild;
pub mod problem;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};


/// Commonly used items.
pub mod prelude {
    pub use crate::eigen::{
        continuation_in_alpha, fixed_point_residual, solve, solve_eigenpair, solve_fixed_lambda, EigenpairResult,
        SolverOptions,
    };
    pub use crate::error::{Error, Result};
    pub use crate::lattice::{
        cone_check, norms, sbeta_apply, semigroup_apply, tbeta_apply, ConeKind, ConeSpec,
        DiagonalGenerator, SineTransform, SpectralField,
    };
    pub use crate::mild::{
        build_weights, caputo_l1_residual, solution_operator, KernelRule, SolutionOperator,
        TimeGrid, Trajectory, VolterraOperator,
    };
    pub use crate::problem::{
        audit, eval_f, eval_h, AuditReport, LambdaMode, NonlinearitySpec, NonlocalSpec,
        ProblemSpec, TimeFn,
    };
    pub use crate::specfun::{
        density_k, density_moments, erfc_fn, gamma_fn, ml, FracOrder, MLEvalConfig,
    };
}
