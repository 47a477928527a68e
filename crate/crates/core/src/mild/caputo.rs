use super::Trajectory;
use crate::error::{data, Error, Result};
use crate::lattice::SineTransform;
use crate::problem::ProblemSpec;
use crate::specfun::gamma_pos;

/// L1-scheme residual of `D^β u + μ u − λ F(t, u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoResidual {
    /// `‖r_n‖_{l2}` over modes at `t_1, …, t_N` (node 0 excluded).
    pub per_node: Vec<f64>,
    /// `max_n ‖r_n‖`.
    pub max: f64,
    /// `(h Σ_n ‖r_n‖²)^{1/2}`.
    pub l2_time: f64,
    /// `‖r_N‖`.
    pub last: f64,
}

/// L1 weights `b_k = (k+1)^{1−β} − k^{1−β}`.
fn l1_weights(beta: f64, n: usize) -> Vec<f64> {
    let e = 1.0 - beta;
    (0..n).map(|k| ((k + 1) as f64).powf(e) - (k as f64).powf(e)).collect()
}

/// Residual of the Caputo equation under the L1 discretization
/// `D^β u(t_n) ≈ h^{−β}/Γ(2−β) Σ_{k<n} b_k (u_{n−k} − u_{n−k−1})`.
///
/// Only uniform grids are supported.
pub fn caputo_l1_residual(problem: &ProblemSpec, u: &Trajectory, lambda: f64) -> Result<CaputoResidual> {
    problem.check_consistent()?;
    let h = problem.grid.uniform_step().ok_or_else(|| {
        Error::Unsupported("the L1 Caputo residual needs a uniform time grid".into())
    })?;
    if !u.same_grid(&problem.grid) || u.modes() != problem.modes() {
        return Err(data("trajectory does not match the problem"));
    }
    let beta = problem.beta.get();
    let n = problem.grid.steps();
    let b = l1_weights(beta, n);
    let scale = h.powf(-beta) / gamma_pos(2.0 - beta);
    let tr = SineTransform::new(problem.modes(), problem.nodal_points())?;
    let f = problem.nonlinearity.prepare(&tr);
    let mu = problem.generator.mu();
    let nodes = problem.grid.nodes();
    let diffs: Vec<Vec<f64>> = (1..=n)
        .map(|j| u.at(j).sub(u.at(j - 1)).into_vec())
        .collect();
    let mut per_node = Vec::with_capacity(n);
    for nn in 1..=n {
        let forcing = f.eval(nodes[nn], u.at(nn), &tr)?;
        let mut sq = 0.0;
        for m in 0..problem.modes() {
            let mut d = 0.0;
            for (k, bk) in b.iter().enumerate().take(nn) {
                d += bk * diffs[nn - k - 1][m];
            }
            let r = scale * d + mu[m] * u.at(nn).coeffs()[m] - lambda * forcing.coeffs()[m];
            sq += r * r;
        }
        per_node.push(sq.sqrt());
    }
    let max = per_node.iter().copied().fold(0.0, f64::max);
    let l2_time = (h * per_node.iter().map(|r| r * r).sum::<f64>()).sqrt();
    let last = *per_node.last().expect("at least one step");
    Ok(CaputoResidual {
        per_node,
        max,
        l2_time,
        last,
    })
}
