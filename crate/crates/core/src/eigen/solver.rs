use crate::error::{domain, Error, Result};
use crate::lattice::SpectralField;
use crate::mild::{SolutionOperator, Trajectory};
use crate::problem::{LambdaMode, ProblemSpec};

/// Iteration controls.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Acceptance threshold for the fixed-point residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Initial damping `d ∈ (0, 1]`.
    pub damping: f64,
    /// Damping is halved on stagnation down to this value.
    pub min_damping: f64,
    /// Stagnation is a step norm that fails to decrease over this many iterations.
    pub window: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 500,
            damping: 1.0,
            min_damping: 1.0 / 16.0,
            window: 5,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(domain(format!("tol must be finite and > 0, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(domain("max_iter must be >= 1"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(domain(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if !(self.min_damping > 0.0 && self.min_damping <= self.damping) {
            return Err(domain("min_damping must lie in (0, damping]"));
        }
        if self.window < 2 {
            return Err(domain("window must be >= 2"));
        }
        Ok(())
    }
}

/// One row of the iteration log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub lambda: f64,
    /// `‖u_{k+1} − u_k‖_∞ / α`.
    pub step_norm: f64,
    pub damping: f64,
}

/// Output of the eigen iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenpairResult {
    pub lambda: f64,
    pub u: Trajectory,
    pub alpha: f64,
    /// `‖u − λ𝒯u‖_∞ / α`, recomputed on the returned pair.
    pub fixed_point_residual: f64,
    pub iteration_history: Vec<IterationRecord>,
    pub converged: bool,
    /// Name of the starting iterate.
    pub seed_profile: String,
}

impl EigenpairResult {
    pub fn iterations(&self) -> usize {
        self.iteration_history.len()
    }
}

/// `(λ, ‖u − λ𝒯u‖_∞ / ‖u‖_∞)` with `λ = ‖u‖_∞ / ‖𝒯u‖_∞`.
pub fn fixed_point_residual(op: &SolutionOperator, u: &Trajectory) -> Result<(f64, f64)> {
    let v = op.apply(u)?;
    let (su, sv) = (u.sup_norm(), v.sup_norm());
    if !(sv > 0.0) || !(su > 0.0) {
        return Err(Error::Degenerate {
            iteration: 0,
            sup_norm: sv,
            floor: 0.0,
        });
    }
    let lambda = su / sv;
    Ok((lambda, u.sup_distance(&v.scaled(lambda)) / su))
}

/// `u_0(t) ≡ α e_1`.
fn initial_iterate(op: &SolutionOperator, alpha: f64) -> Trajectory {
    let p = op.problem();
    Trajectory::constant(p.grid.clone(), &SpectralField::e1(p.modes()).scaled(alpha))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain(format!("alpha must be finite and > 0, got {alpha}")));
    }
    Ok(())
}

/// `λ`, `u` with `‖u‖_∞ = α` and `u = λ𝒯u`, from `u_0 ≡ α e_1`.
pub fn solve_eigenpair(op: &SolutionOperator, alpha: f64, opts: &SolverOptions) -> Result<EigenpairResult> {
    check_alpha(alpha)?;
    solve_eigenpair_from(op, alpha, opts, initial_iterate(op, alpha), "alpha*e1")
}

/// Tracks the stagnation rule: damping halves when the step norm has not
/// decreased over `window` iterations.
struct Damping {
    value: f64,
    min: f64,
    window: usize,
    since_change: usize,
}

impl Damping {
    fn update(&mut self, history: &[IterationRecord]) {
        self.since_change += 1;
        let w = self.window;
        if self.since_change < w || history.len() < w + 1 {
            return;
        }
        let tail = &history[history.len() - w - 1..];
        let stalled = tail.windows(2).all(|p| p[1].step_norm >= p[0].step_norm);
        if stalled && self.value > self.min {
            self.value = (self.value * 0.5).max(self.min);
            self.since_change = 0;
        }
    }
}

/// [`solve_eigenpair`] from a given starting trajectory, rescaled to `α`.
pub fn solve_eigenpair_from(
    op: &SolutionOperator,
    alpha: f64,
    opts: &SolverOptions,
    start: Trajectory,
    seed_profile: &str,
) -> Result<EigenpairResult> {
    opts.validate()?;
    check_alpha(alpha)?;
    let floor = op.problem().audit_floor;
    let s0 = start.sup_norm();
    if !(s0 > 0.0) {
        return Err(domain("the starting iterate must be nonzero"));
    }
    let mut u = start.scaled(alpha / s0);
    let mut damping = Damping {
        value: opts.damping,
        min: opts.min_damping,
        window: opts.window,
        since_change: 0,
    };
    let mut history = Vec::new();
    let mut best: Option<(f64, Trajectory, f64)> = None;
    let make = |u: Trajectory, history: Vec<IterationRecord>, converged: bool| -> Result<EigenpairResult> {
        let (lambda, residual) = fixed_point_residual(op, &u)?;
        Ok(EigenpairResult {
            lambda,
            u,
            alpha,
            fixed_point_residual: residual,
            iteration_history: history,
            converged,
            seed_profile: seed_profile.to_string(),
        })
    };
    for iter in 1..=opts.max_iter {
        let v = op.apply(&u)?;
        let s = v.sup_norm();
        if !(s > floor) {
            return Err(Error::Degenerate {
                iteration: iter,
                sup_norm: s,
                floor,
            });
        }
        let lambda = alpha / s;
        let d = damping.value;
        let mut next = u.combine(1.0 - d, &v, d * lambda);
        if d < 1.0 {
            next = next.scaled(alpha / next.sup_norm());
        }
        let step = next.sup_distance(&u) / alpha;
        history.push(IterationRecord {
            iter,
            lambda,
            step_norm: step,
            damping: d,
        });
        u = next;
        if best.as_ref().map_or(true, |b| step < b.0) {
            best = Some((step, u.clone(), lambda));
        }
        if step <= opts.tol {
            let (_, residual) = fixed_point_residual(op, &u)?;
            if residual <= opts.tol {
                return make(u, history, true);
            }
        }
        damping.update(&history);
    }
    let (best_step, best_u, _) = best.expect("max_iter >= 1");
    let best = make(best_u, history, false)?;
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        best_step,
        best: Box::new(best),
    })
}

/// `u = λ𝒯u` for a prescribed `λ` by damped Picard iteration from `e_1`.
///
/// The result's `alpha` is the norm of the computed `u`.
pub fn solve_fixed_lambda(op: &SolutionOperator, lambda: f64, opts: &SolverOptions) -> Result<EigenpairResult> {
    opts.validate()?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(format!("lambda must be finite and > 0, got {lambda}")));
    }
    let p = op.problem();
    let mut u = Trajectory::constant(p.grid.clone(), &SpectralField::e1(p.modes()).scaled(p.alpha));
    let mut history = Vec::new();
    let mut damping = Damping {
        value: opts.damping,
        min: opts.min_damping,
        window: opts.window,
        since_change: 0,
    };
    let finish = |u: Trajectory, history: Vec<IterationRecord>, converged: bool| -> Result<EigenpairResult> {
        let v = op.apply(&u)?.scaled(lambda);
        let scale = u.sup_norm().max(f64::MIN_POSITIVE);
        Ok(EigenpairResult {
            lambda,
            alpha: u.sup_norm(),
            fixed_point_residual: u.sup_distance(&v) / scale,
            u,
            iteration_history: history,
            converged,
            seed_profile: "alpha*e1".into(),
        })
    };
    let mut best_step = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let v = op.apply(&u)?.scaled(lambda);
        let d = damping.value;
        let next = u.combine(1.0 - d, &v, d);
        let scale = next.sup_norm().max(1e-300);
        let step = next.sup_distance(&u) / scale;
        if !step.is_finite() {
            return Err(Error::Data(format!("fixed-lambda iteration diverged at step {iter}")));
        }
        history.push(IterationRecord {
            iter,
            lambda,
            step_norm: step,
            damping: d,
        });
        best_step = best_step.min(step);
        u = next;
        if step <= opts.tol {
            let r = finish(u.clone(), history.clone(), true)?;
            if r.fixed_point_residual <= opts.tol {
                return Ok(r);
            }
        }
        damping.update(&history);
    }
    let best = finish(u, history, false)?;
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        best_step,
        best: Box::new(best),
    })
}

/// Dispatches on the problem's [`LambdaMode`].
pub fn solve(problem: &ProblemSpec, opts: &SolverOptions) -> Result<EigenpairResult> {
    problem.validate()?;
    let op = SolutionOperator::new(problem)?;
    match problem.lambda_mode {
        LambdaMode::Eigen => solve_eigenpair(&op, problem.alpha, opts),
        LambdaMode::Fixed(l) => solve_fixed_lambda(&op, l, opts),
    }
}
