//! A user-supplied nodal nonlinearity `F(t, x, u) = (1 + u)^{1/2} sin x`.
//! The solver accepts it; the audit declines because no lower bound can
//! be derived for an arbitrary map.
//!
//! ```bash
//! cargo run --release --example custom_nonlinearity
//! ```

use mild_eigen::eigen::{solve, SolverOptions};
use mild_eigen::problem::{audit, CustomMap, NonlinearitySpec, ProblemSpec};
use mild_eigen::Error;

fn main() -> mild_eigen::Result<()> {
    let mut p = ProblemSpec::heat_instance(32, 128)?;
    let map = CustomMap::new("sqrt-growth", |_t, x, u| (1.0 + u.max(0.0)).sqrt() * x.sin());
    p.nonlinearity = NonlinearitySpec::custom(map, p.nodal_points());
    match audit(&p, 1.0, 20, 42) {
        Err(Error::AuditUnavailable(msg)) => println!("audit unavailable: {msg}"),
        other => println!("unexpected audit outcome: {other:?}"),
    }
    let r = solve(&p, &SolverOptions::default())?;
    println!("lambda = {:.12}, residual = {:.2e}, {} iterations", r.lambda, r.fixed_point_residual, r.iterations());
    Ok(())
}
