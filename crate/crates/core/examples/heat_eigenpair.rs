//! Normalized fixed-point iteration for `(λ_α, u_α)` on the fractional heat
//! instance, checked against a finer discretization.
//!
//! ```bash
//! cargo run --release --example heat_eigenpair
//! ```

use mild_eigen::eigen::{solve, SolverOptions};
use mild_eigen::lattice::{cone_check, SineTransform};
use mild_eigen::problem::ProblemSpec;

fn main() -> mild_eigen::Result<()> {
    let opts = SolverOptions::default();
    let coarse = ProblemSpec::heat_instance(64, 256)?;
    let r = solve(&coarse, &opts)?;
    println!("N=256 M=64 : lambda = {:.12}, residual = {:.2e}, {} iterations", r.lambda, r.fixed_point_residual, r.iterations());
    for h in &r.iteration_history {
        println!("  iter {:>3}: lambda {:.12}  step {:.3e}", h.iter, h.lambda, h.step_norm);
    }
    let cone = cone_check(&r.u, &coarse.cone, coarse.nodal_points())?;
    println!("cone member: {}, nodal min {:.3e}", cone.member, cone.worst_min);

    let tr = SineTransform::square(64)?;
    let mid = tr.to_nodal(r.u.last());
    println!("u(1, pi/2) = {:.10}", mid[mid.len() / 2]);

    let fine = ProblemSpec::heat_instance(128, 512)?;
    let rf = solve(&fine, &opts)?;
    println!("N=512 M=128: lambda = {:.12}, relative gap {:.2e}", rf.lambda, (rf.lambda - r.lambda).abs() / rf.lambda);
    Ok(())
}
