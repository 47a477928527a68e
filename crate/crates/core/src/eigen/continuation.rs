use super::solver::{solve_eigenpair, solve_eigenpair_from, EigenpairResult, SolverOptions};
use crate::error::{domain, Error, Result};
use crate::mild::SolutionOperator;

/// One point of an `α`-sweep.
#[derive(Debug)]
pub struct ContinuationPoint {
    pub alpha: f64,
    /// Warm-started solve (cold for the first point).
    pub result: Result<EigenpairResult>,
    /// Iterations of a cold start from `α e_1`, when requested.
    pub cold_iterations: Option<std::result::Result<usize, String>>,
}

impl ContinuationPoint {
    /// Warm-start iterations, counting the best iterate on failure.
    pub fn warm_iterations(&self) -> Option<usize> {
        match &self.result {
            Ok(r) => Some(r.iterations()),
            Err(Error::NonConvergence { iterations, .. }) => Some(*iterations),
            Err(_) => None,
        }
    }
}

/// Solves along increasing `alphas`, warm-starting each point from the
/// previous converged eigenfunction. Failures are recorded per point.
/// With `compare_cold`, every point after the first is also solved from
/// `α e_1` and its iteration count stored.
pub fn continuation_in_alpha(
    op: &SolutionOperator,
    alphas: &[f64],
    opts: &SolverOptions,
    compare_cold: bool,
) -> Result<Vec<ContinuationPoint>> {
    if alphas.is_empty() {
        return Err(domain("continuation needs at least one alpha"));
    }
    if alphas.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return Err(domain("every alpha must be finite and > 0"));
    }
    if alphas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("alphas must be strictly increasing"));
    }
    let mut out: Vec<ContinuationPoint> = Vec::with_capacity(alphas.len());
    let mut warm = None;
    for (i, &alpha) in alphas.iter().enumerate() {
        let result = match &warm {
            None => solve_eigenpair(op, alpha, opts),
            Some(prev) => solve_eigenpair_from(op, alpha, opts, Clone::clone(prev), "warm"),
        };
        let cold_iterations = (compare_cold && i > 0).then(|| match solve_eigenpair(op, alpha, opts) {
            Ok(r) => Ok(r.iterations()),
            Err(e) => Err(e.to_string()),
        });
        if let Ok(r) = &result {
            warm = Some(r.u.clone());
        }
        out.push(ContinuationPoint {
            alpha,
            result,
            cold_iterations,
        });
    }
    Ok(out)
}
