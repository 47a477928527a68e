//! The `(α, λ_α)` curve by warm-started continuation, with cold-start
//! iteration counts for comparison.
//!
//! ```bash
//! cargo run --release --example alpha_continuation
//! ```

use mild_eigen::eigen::{continuation_in_alpha, SolverOptions};
use mild_eigen::mild::SolutionOperator;
use mild_eigen::problem::ProblemSpec;

fn main() -> mild_eigen::Result<()> {
    let p = ProblemSpec::heat_instance(32, 128)?;
    let op = SolutionOperator::new(&p)?;
    let alphas = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
    let pts = continuation_in_alpha(&op, &alphas, &SolverOptions::default(), true)?;
    println!("{:>6} {:>16} {:>10} {:>6} {:>6}", "alpha", "lambda", "residual", "warm", "cold");
    for pt in pts {
        match &pt.result {
            Ok(r) => {
                let cold = match &pt.cold_iterations {
                    Some(Ok(c)) => c.to_string(),
                    Some(Err(_)) => "fail".into(),
                    None => "-".into(),
                };
                println!("{:>6} {:>16.12} {:>10.2e} {:>6} {:>6}", pt.alpha, r.lambda, r.fixed_point_residual, r.iterations(), cold);
            }
            Err(e) => println!("{:>6} failed: {e}", pt.alpha),
        }
    }
    Ok(())
}
