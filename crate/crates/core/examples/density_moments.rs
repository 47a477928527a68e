//! The density `k_β`: certified series range, tail bound and the two
//! moment identities `∫k_β = 1`, `∫τk_β = 1/Γ(1+β)`.
//!
//! ```bash
//! cargo run --release --example density_moments
//! ```

use mild_eigen::specfun::{density_k, density_moments, density_tau_max, gamma_fn, FracOrder, DEFAULT_DENSITY_TERMS};

fn main() -> mild_eigen::Result<()> {
    for b in [0.3, 0.5, 0.7] {
        let beta = FracOrder::new(b)?;
        let m = density_moments(beta, 20_000)?;
        let want = 1.0 / gamma_fn(1.0 + b)?;
        println!(
            "beta = {b}: tau_cert = {:.3}, m0 - 1 = {:+.2e}, m1 - 1/Gamma(1+beta) = {:+.2e}, tail <= {:.1e}",
            density_tau_max(beta, DEFAULT_DENSITY_TERMS),
            m.m0 - 1.0,
            m.m1 - want,
            m.tail_bound
        );
    }
    let half = FracOrder::new(0.5)?;
    println!("\n  tau      k_1/2(tau)          exp(-tau^2/4)/sqrt(pi)");
    for i in 0..=6 {
        let tau = 0.5 * i as f64;
        let closed = (-tau * tau / 4.0).exp() / std::f64::consts::PI.sqrt();
        println!("{tau:5.2}  {:.15}  {closed:.15}", density_k(half, tau, DEFAULT_DENSITY_TERMS)?);
    }
    Ok(())
}
