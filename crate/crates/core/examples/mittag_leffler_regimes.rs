//! Evaluates `E_{a,b}(−x)` across the regime boundary and shows which
//! method certified each value.
//!
//! ```bash
//! cargo run --release --example mittag_leffler_regimes
//! ```

use mild_eigen::specfun::{erfc_fn, ml_eval, MLEvalConfig};

fn main() -> mild_eigen::Result<()> {
    let cfg = MLEvalConfig::default();
    println!("{:>6} {:>6} {:>8} {:>24} {:>10} {:>11}", "a", "b", "x", "E_{a,b}(-x)", "rel_err", "method");
    for (a, b) in [(0.3, 1.0), (0.5, 0.5), (0.5, 1.0), (0.9, 0.9), (1.0, 1.0)] {
        for x in [0.5, 5.0, 9.5, 10.5, 40.0, 400.0] {
            let v = ml_eval(a, b, -x, &cfg)?;
            println!("{a:>6} {b:>6} {x:>8} {:>24.16e} {:>10.2e} {:>11?}", v.value, v.rel_err, v.method);
        }
    }
    // E_{1/2}(−x) = e^{x²} erfc(x) for moderate x.
    let x: f64 = 2.0;
    let v = ml_eval(0.5, 1.0, -x, &cfg)?.value;
    println!("\nE_1/2(-2) = {v:.15}  e^4 erfc(2) = {:.15}", (x * x).exp() * erfc_fn(x));
    Ok(())
}
