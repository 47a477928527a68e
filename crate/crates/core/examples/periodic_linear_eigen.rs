//! A linear case with a closed-form answer: `F ≡ 0` and `u(0) = λu(1)`
//! give `λ = 1/E_β(−μ_1)`.
//!
//! ```bash
//! cargo run --release --example periodic_linear_eigen
//! ```

use mild_eigen::eigen::{solve, SolverOptions};
use mild_eigen::mild::TimeGrid;
use mild_eigen::problem::{NonlinearitySpec, NonlocalSpec, ProblemSpec};
use mild_eigen::specfun::{ml, FracOrder, MLEvalConfig};
use std::sync::Arc;

fn main() -> mild_eigen::Result<()> {
    for b in [0.3, 0.5, 0.8] {
        let p = ProblemSpec::new(
            FracOrder::new(b)?,
            16,
            Arc::new(TimeGrid::uniform(64)?),
            NonlinearitySpec::zero(17),
            NonlocalSpec::Periodic,
            0.1,
            1.0,
        )?;
        let r = solve(&p, &SolverOptions::default())?;
        let exact = 1.0 / ml(b, 1.0, -1.0, &MLEvalConfig::default())?;
        println!("beta = {b}: lambda = {:.12}, 1/E_beta(-1) = {exact:.12}, {} iterations", r.lambda, r.iterations());
    }
    Ok(())
}
