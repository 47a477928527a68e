use super::TimeGrid;
use crate::specfun::FracOrder;
use std::sync::Arc;

/// Scalar product-trapezoid weights for `∫_0^{t_n} (t_n − s)^{β−1} h(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraWeights {
    pub beta: FracOrder,
    pub grid: Arc<TimeGrid>,
    /// `w[n][j]` for `0 ≤ j ≤ n ≤ N`.
    pub w: Vec<Vec<f64>>,
}

impl VolterraWeights {
    /// `Σ_j w[n][j] h(t_j)`.
    pub fn apply(&self, n: usize, h: impl Fn(usize) -> f64) -> f64 {
        self.w[n].iter().enumerate().map(|(j, w)| w * h(j)).sum()
    }
}

/// `(I0, I1)` with `I0 = ∫_{τb}^{τa} u^{β−1} du` and
/// `I1 = ∫_{τb}^{τa} u^{β−1} (τa − u) du`, evaluated without cancellation
/// in `τa^β − τb^β`.
pub(crate) fn cell_moments(beta: f64, tau_b: f64, tau_a: f64) -> (f64, f64) {
    let pa = tau_a.powf(beta);
    let (d0, d1) = if tau_b == 0.0 {
        (pa, pa * tau_a)
    } else {
        let l = (-(tau_a - tau_b) / tau_a).ln_1p();
        // τa^c − τb^c = −τa^c expm1(c ln(τb/τa))
        (-pa * (beta * l).exp_m1(), -pa * tau_a * ((beta + 1.0) * l).exp_m1())
    };
    let i0 = d0 / beta;
    let i1 = tau_a * i0 - d1 / (beta + 1.0);
    (i0, i1)
}

/// Product-trapezoid weights: the factor `(t_n − s)^{β−1}` is integrated
/// exactly against the piecewise-linear interpolant of `h`.
///
/// ```
/// use mild_eigen::mild::{build_weights, TimeGrid};
/// use mild_eigen::specfun::FracOrder;
/// use std::sync::Arc;
/// let w = build_weights(FracOrder::new(0.5).unwrap(), &Arc::new(TimeGrid::uniform(1).unwrap()));
/// assert!((w.w[1].iter().sum::<f64>() - 2.0).abs() < 1e-15);
/// ```
pub fn build_weights(beta: FracOrder, grid: &Arc<TimeGrid>) -> VolterraWeights {
    let b = beta.get();
    let t = grid.nodes();
    let mut w = Vec::with_capacity(t.len());
    w.push(vec![0.0]);
    for n in 1..t.len() {
        let mut row = vec![0.0; n + 1];
        for j in 0..n {
            let tau_a = t[n] - t[j];
            let tau_b = if j + 1 == n { 0.0 } else { t[n] - t[j + 1] };
            let h = t[j + 1] - t[j];
            let (i0, i1) = cell_moments(b, tau_b, tau_a);
            row[j + 1] += i1 / h;
            row[j] += i0 - i1 / h;
        }
        w.push(row);
    }
    VolterraWeights {
        beta,
        grid: grid.clone(),
        w,
    }
}
