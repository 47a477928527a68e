//! Hypothesis audit of the fractional heat instance: bounds, lower
//! bounds and the floor `b(t_0)`.
//!
//! ```bash
//! cargo run --release --example heat_audit
//! ```

use mild_eigen::problem::{audit, ProblemSpec};

fn main() -> mild_eigen::Result<()> {
    let p = ProblemSpec::heat_instance(64, 256)?;
    let rep = audit(&p, 1.0, 100, 42)?;
    println!("M_alpha  = {:.10} (analytic {:?}, sampled {:.6})", rep.m_alpha, rep.m_alpha_analytic, rep.m_alpha_sampled);
    println!("N_alpha  = {:.10}", rep.n_alpha);
    println!("omega_0  = {:?}", rep.omega0);
    println!("|Phi|    = {:.10}", rep.phi_alpha.l2_norm());
    println!("b(t0)    = {:.10} at t0 = {}", rep.b_t0, rep.t0);
    println!("margins  f2 {:+.3e}  h1 {:+.3e}", rep.f2_margin, rep.h1_margin);
    println!("passed   f2 = {}, h1 = {}, h2 = {}", rep.passed.f2, rep.passed.h1, rep.passed.h2);
    for n in &rep.notes {
        println!("note: {n}");
    }
    Ok(())
}
