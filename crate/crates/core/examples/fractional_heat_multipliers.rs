//! Mode-wise multipliers of `S_β(t)` and `T_β(t)` for the Dirichlet
//! Laplacian on `(0, π)`, with the heat semigroup for comparison.
//!
//! ```bash
//! cargo run --release --example fractional_heat_multipliers
//! ```

use mild_eigen::lattice::{sbeta_multipliers, semigroup_apply, tbeta_multipliers, DiagonalGenerator, SpectralField};
use mild_eigen::specfun::{FracOrder, MLEvalConfig};

fn main() -> mild_eigen::Result<()> {
    let g = DiagonalGenerator::dirichlet_laplacian(5);
    let cfg = MLEvalConfig::default();
    let ones = SpectralField::new(vec![1.0; 5])?;
    for b in [0.3, 0.5, 0.9] {
        let beta = FracOrder::new(b)?;
        println!("beta = {b}");
        for t in [0.1, 1.0] {
            let s = sbeta_multipliers(&g, beta, t, &cfg)?;
            let tb = tbeta_multipliers(&g, beta, t, &cfg)?;
            let heat = semigroup_apply(&g, t, &ones)?;
            println!("  t = {t}");
            for n in 0..5 {
                println!(
                    "    n = {}: S = {:.6e}  T = {:.6e}  heat = {:.6e}",
                    n + 1,
                    s[n],
                    tb[n],
                    heat.coeffs()[n]
                );
            }
        }
    }
    Ok(())
}
