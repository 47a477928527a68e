use super::{build_weights, caputo_l1_residual, CaputoResidual, TimeGrid, Trajectory};
use crate::error::Result;
use crate::lattice::SpectralField;
use crate::problem::{NonlinearitySpec, NonlocalSpec, ProblemSpec};
use crate::specfun::{gamma_pos, ml, FracOrder, MLEvalConfig};
use std::sync::Arc;

/// Product-integration solution of `u(t) = 1 − (1/Γ(β)) ∫_0^t (t − s)^{β−1} u(s) ds`,
/// whose exact solution is `E_β(−t^β)`.
pub fn benchmark_solution(beta: FracOrder, grid: &Arc<TimeGrid>) -> Vec<f64> {
    let w = build_weights(beta, grid);
    let g = gamma_pos(beta.get());
    let mut u = Vec::with_capacity(grid.len());
    u.push(1.0);
    for n in 1..grid.len() {
        let row = &w.w[n];
        let hist: f64 = row[..n].iter().zip(&u).map(|(a, b)| a * b).sum();
        u.push((1.0 - hist / g) / (1.0 + row[n] / g));
    }
    u
}

/// One benchmark solve compared with the closed form.
#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    pub grid: Arc<TimeGrid>,
    pub computed: Vec<f64>,
    pub exact: Vec<f64>,
    /// `max_n |u_n − E_β(−t_n^β)|`, equal to the l2 error of the field `u_n e_1`.
    pub max_error: f64,
    /// L1 residual of `u e_1` for `D^β u = −u` (uniform grids only).
    pub residual: Option<CaputoResidual>,
}

/// Solves the benchmark on `grid` and certifies it.
pub fn linear_benchmark(beta: FracOrder, grid: Arc<TimeGrid>, cfg: &MLEvalConfig) -> Result<BenchmarkRun> {
    let computed = benchmark_solution(beta, &grid);
    let b = beta.get();
    let exact = grid
        .nodes()
        .iter()
        .map(|&t| ml(b, 1.0, -t.powf(b), cfg))
        .collect::<Result<Vec<_>>>()?;
    let max_error = computed
        .iter()
        .zip(&exact)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max);
    let residual = if grid.is_uniform() {
        let problem = ProblemSpec::new(
            beta,
            1,
            grid.clone(),
            NonlinearitySpec::zero(2),
            NonlocalSpec::Fixed(SpectralField::e1(1)),
            0.1,
            1.0,
        )?;
        let u = Trajectory::new(
            grid.clone(),
            computed.iter().map(|&v| SpectralField::mode(1, 1, v)).collect(),
        )?;
        Some(caputo_l1_residual(&problem, &u, 1.0)?)
    } else {
        None
    };
    Ok(BenchmarkRun {
        grid,
        computed,
        exact,
        max_error,
        residual,
    })
}

/// One row of [`convergence_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub uniform_error: f64,
    /// `log2(e_{N/2} / e_N)` against the previous row.
    pub uniform_order: Option<f64>,
    pub graded_error: f64,
    pub graded_order: Option<f64>,
    /// Discrete L2-in-time L1 residual on the uniform grid.
    pub residual_l2: f64,
    pub residual_order: Option<f64>,
    /// Max-over-nodes L1 residual on the uniform grid.
    pub residual_max: f64,
    /// Computed `u(1)` on the uniform grid.
    pub final_value: f64,
}

/// Grading exponent `2/β` used by [`convergence_study`].
pub fn graded_gamma(beta: FracOrder) -> f64 {
    (2.0 / beta.get()).max(1.0)
}

fn order(prev: Option<f64>, cur: f64, ratio: f64) -> Option<f64> {
    prev.map(|p| (p / cur).ln() / ratio.ln())
}

/// Benchmark errors and residuals over a list of step counts, on uniform
/// and graded (`γ = 2/β`) grids.
pub fn convergence_study(beta: FracOrder, steps: &[usize], cfg: &MLEvalConfig) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(steps.len());
    for &n in steps {
        let uni = linear_benchmark(beta, Arc::new(TimeGrid::uniform(n)?), cfg)?;
        let gra = linear_benchmark(beta, Arc::new(TimeGrid::graded(n, graded_gamma(beta))?), cfg)?;
        let res = uni.residual.as_ref().expect("uniform runs carry a residual");
        let prev = rows.last();
        let ratio = prev.map_or(2.0, |p| n as f64 / p.steps as f64);
        rows.push(ConvergenceRow {
            steps: n,
            uniform_error: uni.max_error,
            uniform_order: order(prev.map(|p| p.uniform_error), uni.max_error, ratio),
            graded_error: gra.max_error,
            graded_order: order(prev.map(|p| p.graded_error), gra.max_error, ratio),
            residual_l2: res.l2_time,
            residual_order: order(prev.map(|p| p.residual_l2), res.l2_time, ratio),
            residual_max: res.max,
            final_value: *uni.computed.last().expect("nonempty"),
        });
    }
    Ok(rows)
}
