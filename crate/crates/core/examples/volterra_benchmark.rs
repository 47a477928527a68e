//! Product integration on the linear benchmark `u = 1 − (1/Γ(β)) ∫(t−s)^{β−1}u`,
//! whose solution is `E_β(−t^β)`, on uniform and graded grids.
//!
//! ```bash
//! cargo run --release --example volterra_benchmark
//! ```

use mild_eigen::mild::{convergence_study, graded_gamma};
use mild_eigen::specfun::{FracOrder, MLEvalConfig};

fn main() -> mild_eigen::Result<()> {
    let beta = FracOrder::new(0.5)?;
    let rows = convergence_study(beta, &[32, 64, 128, 256, 512], &MLEvalConfig::default())?;
    println!("graded exponent gamma = {}", graded_gamma(beta));
    println!("{:>5} {:>12} {:>7} {:>12} {:>7} {:>12}", "N", "uniform", "order", "graded", "order", "L1 resid");
    let fmt = |o: Option<f64>| o.map_or("-".to_string(), |v| format!("{v:.2}"));
    for r in rows {
        println!(
            "{:>5} {:>12.4e} {:>7} {:>12.4e} {:>7} {:>12.4e}",
            r.steps,
            r.uniform_error,
            fmt(r.uniform_order),
            r.graded_error,
            fmt(r.graded_order),
            r.residual_l2
        );
    }
    Ok(())
}
