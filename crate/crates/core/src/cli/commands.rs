use super::config::RunConfig;
use super::output::{Cell, ReportWriter};
use crate::eigen::{continuation_in_alpha, solve_eigenpair, solve_fixed_lambda, EigenpairResult};
use crate::error::{Error, Result};
use crate::lattice::{cone_check, SineTransform};
use crate::mild::{convergence_study, linear_benchmark, GridKind, SolutionOperator, TimeGrid};
use crate::problem::{audit, AuditReport, LambdaMode, ProblemSpec};
use crate::specfun::{
    density_k, density_k_integral, density_moments, density_tau_max, gamma_fn, ml_eval, FracOrder,
    MLEvalConfig, DEFAULT_DENSITY_TERMS,
};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Result of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    /// Short human-readable summary for stdout.
    pub summary: String,
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Arguments of `ml`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlArgs {
    pub a: f64,
    pub b: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub step: f64,
}

/// Arguments of `density`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityArgs {
    pub beta: f64,
    pub tau_max: f64,
    pub step: f64,
    pub quadrature_nodes: usize,
}

/// `lo, lo + step, …` up to `hi` inclusive.
fn range(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(cfg_err(format!("step must be finite and > 0, got {step}")));
    }
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(cfg_err(format!("empty or invalid range [{lo}, {hi}]")));
    }
    let count = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(cfg_err("range has more than 1e7 points"));
    }
    Ok((0..count).map(|k| (lo + k as f64 * step).min(hi)).collect())
}

/// Table of `E_{a,b}(z)` on a grid of `z ≤ 0`.
pub fn cmd_ml(args: &MlArgs, out: &Path, precision: usize) -> Result<Outcome> {
    if args.z_max > 0.0 {
        return Err(cfg_err("ml is defined here for z <= 0 only"));
    }
    let zs = range(args.z_min, args.z_max, args.step)?;
    let cfg = MLEvalConfig::default();
    let mut rows = Vec::with_capacity(zs.len());
    for z in zs {
        let v = ml_eval(args.a, args.b, z, &cfg)?;
        rows.push(vec![Cell::F(z), Cell::F(v.value), Cell::F(v.rel_err), Cell::S(format!("{:?}", v.method).to_lowercase())]);
    }
    let mut w = ReportWriter::new(out, precision)?;
    w.table("ml.csv", &["z", "value", "rel_err_bound", "method"], &rows)?;
    let n = rows.len();
    Ok(Outcome {
        exit_code: 0,
        files: w.finish()?,
        summary: format!("ml: {n} values of E_({}, {})", args.a, args.b),
    })
}

/// Table of `k_β(τ)` and the two moments.
pub fn cmd_density(args: &DensityArgs, out: &Path, precision: usize) -> Result<Outcome> {
    let beta = FracOrder::new(args.beta)?;
    let taus = range(0.0, args.tau_max, args.step)?;
    let tau_cert = density_tau_max(beta, DEFAULT_DENSITY_TERMS);
    let mut rows = Vec::with_capacity(taus.len());
    for tau in taus {
        let (v, src) = if tau <= tau_cert {
            (density_k(beta, tau, DEFAULT_DENSITY_TERMS)?, "series")
        } else {
            (density_k_integral(beta, tau)?, "integral")
        };
        rows.push(vec![Cell::F(tau), Cell::F(v), Cell::from(src)]);
    }
    let m = density_moments(beta, args.quadrature_nodes)?;
    let expected_m1 = 1.0 / gamma_fn(1.0 + args.beta)?;
    let mut w = ReportWriter::new(out, precision)?;
    w.table("density.csv", &["tau", "k", "source"], &rows)?;
    w.key_values(
        "density_moments.csv",
        vec![
            ("beta", Cell::F(args.beta)),
            ("m0", Cell::F(m.m0)),
            ("m1", Cell::F(m.m1)),
            ("m1_expected", Cell::F(expected_m1)),
            ("m0_error", Cell::F((m.m0 - 1.0).abs())),
            ("m1_error", Cell::F((m.m1 - expected_m1).abs())),
            ("tau_certified", Cell::F(m.tau_cert)),
            ("tau_cut", Cell::F(m.tau_cut)),
            ("tail_bound", Cell::F(m.tail_bound)),
        ],
    )?;
    Ok(Outcome {
        exit_code: 0,
        files: w.finish()?,
        summary: format!("density: m0 = {:.12}, m1 = {:.12} (expected {:.12})", m.m0, m.m1, expected_m1),
    })
}

fn audit_rows(r: &AuditReport) -> Vec<(&'static str, Cell)> {
    vec![
        ("status", Cell::from(if r.all_passed() { "passed" } else { "failed" })),
        ("f2", Cell::B(r.passed.f2)),
        ("h1", Cell::B(r.passed.h1)),
        ("h2", Cell::B(r.passed.h2)),
        ("t0", Cell::F(r.t0)),
        ("samples", Cell::from(r.samples)),
        ("seed", Cell::I(r.seed as i64)),
        ("cone", Cell::from(r.cone_kind.name())),
        ("M_alpha", Cell::F(r.m_alpha)),
        ("M_alpha_analytic", Cell::from(r.m_alpha_analytic)),
        ("M_alpha_sampled", Cell::F(r.m_alpha_sampled)),
        ("N_alpha", Cell::F(r.n_alpha)),
        ("N_alpha_analytic", Cell::F(r.n_alpha_analytic)),
        ("N_alpha_sampled", Cell::F(r.n_alpha_sampled)),
        ("omega0", Cell::from(r.omega0)),
        ("Phi_alpha_norm", Cell::F(r.phi_alpha.l2_norm())),
        ("gamma_alpha_sup", Cell::F(r.gamma_alpha.sup_norm())),
        ("b_t0", Cell::F(r.b_t0)),
        ("audit_floor", Cell::F(r.audit_floor)),
        ("volterra_bound", Cell::F(r.volterra_bound)),
        ("f_min", Cell::F(r.f_min)),
        ("f2_margin", Cell::F(r.f2_margin)),
        ("h1_margin", Cell::F(r.h1_margin)),
        ("floor_min", Cell::F(r.floor_min)),
        ("tolerance", Cell::F(r.tolerance)),
        ("notes", Cell::S(r.notes.join("; ").replace(',', ";"))),
    ]
}

/// Hypothesis audit; exit code 4 unless every check passes.
pub fn cmd_audit(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let mut w = ReportWriter::new(out, cfg.precision)?;
    match audit(&cfg.problem, cfg.t0, cfg.samples, cfg.seed) {
        Ok(r) => {
            let mut rows = audit_rows(&r);
            rows.insert(0, ("config_sha256", Cell::S(cfg.sha256.clone())));
            w.key_values("audit.csv", rows)?;
            let phi: Vec<Vec<Cell>> = r
                .phi_alpha
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| vec![Cell::from(i + 1), Cell::F(*c)])
                .collect();
            w.table("phi_alpha.csv", &["mode", "coeff"], &phi)?;
            let gamma: Vec<Vec<Cell>> = r
                .gamma_alpha
                .values()
                .iter()
                .zip(r.gamma_alpha.grid().nodes())
                .map(|(g, t)| vec![Cell::F(*t), Cell::F(g.l2_norm())])
                .collect();
            w.table("gamma_alpha.csv", &["t", "l2_norm"], &gamma)?;
            let code = if r.all_passed() { 0 } else { 4 };
            Ok(Outcome {
                exit_code: code,
                files: w.finish()?,
                summary: format!(
                    "audit: f2={} h1={} h2={} b(t0)={:.6e} M_alpha={:.7}",
                    r.passed.f2, r.passed.h1, r.passed.h2, r.b_t0, r.m_alpha
                ),
            })
        }
        Err(Error::AuditUnavailable(reason)) => {
            w.key_values(
                "audit.csv",
                vec![
                    ("config_sha256", Cell::S(cfg.sha256.clone())),
                    ("status", Cell::from("unavailable")),
                    ("reason", Cell::S(reason.replace(',', ";"))),
                ],
            )?;
            Ok(Outcome {
                exit_code: 4,
                files: w.finish()?,
                summary: format!("audit unavailable: {reason}"),
            })
        }
        Err(e) => Err(e),
    }
}

/// Solution (or best iterate) and whether it converged.
fn solve_problem(op: &SolutionOperator, problem: &ProblemSpec, cfg: &RunConfig) -> Result<EigenpairResult> {
    let r = match problem.lambda_mode {
        LambdaMode::Eigen => solve_eigenpair(op, problem.alpha, &cfg.solver),
        LambdaMode::Fixed(l) => solve_fixed_lambda(op, l, &cfg.solver),
    };
    match r {
        Ok(r) => Ok(r),
        Err(Error::NonConvergence { best, .. }) => Ok(*best),
        Err(e) => Err(e),
    }
}

fn refined(problem: &ProblemSpec) -> Result<ProblemSpec> {
    let steps = 2 * problem.grid.steps();
    let grid = match problem.grid.kind() {
        GridKind::Uniform => TimeGrid::uniform(steps)?,
        GridKind::Graded { gamma } => TimeGrid::graded(steps, gamma)?,
    };
    Ok(problem.with_modes(2 * problem.modes())?.with_grid(Arc::new(grid)))
}

fn trajectory_rows(r: &EigenpairResult, problem: &ProblemSpec) -> Result<Vec<Vec<Cell>>> {
    let tr = SineTransform::new(problem.modes(), problem.nodal_points())?;
    let xs = tr.nodes();
    let mut rows = Vec::with_capacity(r.u.len() * xs.len());
    for (f, &t) in r.u.values().iter().zip(problem.grid.nodes()) {
        for (v, &x) in tr.to_nodal(f).iter().zip(&xs) {
            rows.push(vec![Cell::F(t), Cell::F(x), Cell::F(*v)]);
        }
    }
    Ok(rows)
}

/// Eigenpair solve with trajectory, history and summary tables; exit code 3
/// on non-convergence (files then hold the best iterate).
pub fn cmd_eigen(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let problem = &cfg.problem;
    let op = SolutionOperator::new(problem)?;
    let r = solve_problem(&op, problem, cfg)?;
    let cone = cone_check(&r.u, &problem.cone, problem.nodal_points())?;
    let audit_flags = if cfg.run_audit {
        match audit(problem, cfg.t0, cfg.samples, cfg.seed) {
            Ok(a) => Some(Ok(a.passed)),
            Err(Error::AuditUnavailable(m)) => Some(Err(m)),
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let flag = |f: fn(&crate::problem::HypothesisFlags) -> bool| match &audit_flags {
        None => Cell::from("skipped"),
        Some(Ok(p)) => Cell::B(f(p)),
        Some(Err(_)) => Cell::from("unavailable"),
    };
    let mut w = ReportWriter::new(out, cfg.precision)?;
    w.key_values(
        "summary.csv",
        vec![
            ("config_sha256", Cell::S(cfg.sha256.clone())),
            ("lambda", Cell::F(r.lambda)),
            ("alpha", Cell::F(r.alpha)),
            ("sup_norm", Cell::F(r.u.sup_norm())),
            ("fixed_point_residual", Cell::F(r.fixed_point_residual)),
            ("iterations", Cell::from(r.iterations())),
            ("converged", Cell::B(r.converged)),
            ("seed_profile", Cell::S(r.seed_profile.clone())),
            ("modes", Cell::from(problem.modes())),
            ("time_steps", Cell::from(problem.grid.steps())),
            ("cone_member", Cell::B(cone.member)),
            ("nodal_min", Cell::F(cone.worst_min)),
            ("audit_f2", flag(|p| p.f2)),
            ("audit_h1", flag(|p| p.h1)),
            ("audit_h2", flag(|p| p.h2)),
            ("seed", Cell::I(cfg.seed as i64)),
        ],
    )?;
    w.table("trajectory.csv", &["t", "x", "u"], &trajectory_rows(&r, problem)?)?;
    let hist: Vec<Vec<Cell>> = r
        .iteration_history
        .iter()
        .map(|h| vec![Cell::from(h.iter), Cell::F(h.lambda), Cell::F(h.step_norm), Cell::F(h.damping)])
        .collect();
    w.table("history.csv", &["iter", "lambda", "step_norm", "damping"], &hist)?;
    w.table(
        "lambda.csv",
        &["alpha", "lambda", "residual", "converged", "sup_norm"],
        &[vec![
            Cell::F(r.alpha),
            Cell::F(r.lambda),
            Cell::F(r.fixed_point_residual),
            Cell::B(r.converged),
            Cell::F(r.u.sup_norm()),
        ]],
    )?;
    let mut summary = format!(
        "eigen: lambda = {:.12}, residual = {:.3e}, iterations = {}, converged = {}",
        r.lambda,
        r.fixed_point_residual,
        r.iterations(),
        r.converged
    );
    if cfg.refine {
        let fine = refined(problem)?;
        let fop = SolutionOperator::new(&fine)?;
        let rf = solve_problem(&fop, &fine, cfg)?;
        let gap = (rf.lambda - r.lambda).abs() / rf.lambda.abs();
        w.table(
            "comparison.csv",
            &["modes", "time_steps", "lambda", "residual", "converged", "relative_gap"],
            &[
                vec![
                    Cell::from(problem.modes()),
                    Cell::from(problem.grid.steps()),
                    Cell::F(r.lambda),
                    Cell::F(r.fixed_point_residual),
                    Cell::B(r.converged),
                    Cell::F(0.0),
                ],
                vec![
                    Cell::from(fine.modes()),
                    Cell::from(fine.grid.steps()),
                    Cell::F(rf.lambda),
                    Cell::F(rf.fixed_point_residual),
                    Cell::B(rf.converged),
                    Cell::F(gap),
                ],
            ],
        )?;
        summary.push_str(&format!(", refined lambda = {:.12} (gap {gap:.3e})", rf.lambda));
    }
    Ok(Outcome {
        exit_code: if r.converged { 0 } else { 3 },
        files: w.finish()?,
        summary,
    })
}

/// Continuation over `alphas`; exit code 3 if any point fails.
pub fn cmd_sweep(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let op = SolutionOperator::new(&cfg.problem)?;
    let points = continuation_in_alpha(&op, &cfg.alphas, &cfg.solver, cfg.compare_cold)?;
    let mut rows = Vec::with_capacity(points.len());
    let mut failed = 0;
    for p in &points {
        let cold = match &p.cold_iterations {
            Some(Ok(n)) => Cell::from(*n),
            Some(Err(_)) => Cell::from("failed"),
            None => Cell::from(""),
        };
        match &p.result {
            Ok(r) => rows.push(vec![
                Cell::F(p.alpha),
                Cell::F(r.lambda),
                Cell::F(r.fixed_point_residual),
                Cell::from(r.iterations()),
                Cell::B(true),
                Cell::F(r.u.sup_norm()),
                cold,
                Cell::from("ok"),
            ]),
            Err(Error::NonConvergence { best, iterations, .. }) => {
                failed += 1;
                rows.push(vec![
                    Cell::F(p.alpha),
                    Cell::F(best.lambda),
                    Cell::F(best.fixed_point_residual),
                    Cell::from(*iterations),
                    Cell::B(false),
                    Cell::F(best.u.sup_norm()),
                    cold,
                    Cell::from("non-convergence"),
                ]);
            }
            Err(e) => {
                failed += 1;
                let nan = Cell::F(f64::NAN);
                rows.push(vec![
                    Cell::F(p.alpha),
                    nan.clone(),
                    nan.clone(),
                    Cell::from(0usize),
                    Cell::B(false),
                    nan,
                    cold,
                    Cell::S(e.to_string().replace(',', ";")),
                ]);
            }
        }
    }
    let warm_le_cold = points
        .iter()
        .filter(|p| matches!((&p.result, &p.cold_iterations), (Ok(r), Some(Ok(c))) if r.iterations() <= *c))
        .count();
    let compared = points.iter().filter(|p| p.cold_iterations.is_some()).count();
    let mut w = ReportWriter::new(out, cfg.precision)?;
    w.table(
        "sweep.csv",
        &["alpha", "lambda", "residual", "iterations", "converged", "sup_norm", "cold_iterations", "status"],
        &rows,
    )?;
    w.key_values(
        "sweep_summary.csv",
        vec![
            ("config_sha256", Cell::S(cfg.sha256.clone())),
            ("points", Cell::from(points.len())),
            ("failed", Cell::from(failed as usize)),
            ("compared_with_cold", Cell::from(compared)),
            ("warm_not_slower", Cell::from(warm_le_cold)),
        ],
    )?;
    Ok(Outcome {
        exit_code: if failed > 0 { 3 } else { 0 },
        files: w.finish()?,
        summary: format!("sweep: {} points, {failed} failed, warm <= cold at {warm_le_cold}/{compared}", points.len()),
    })
}

/// Linear benchmark convergence table plus a `β → 1` sanity row.
pub fn cmd_convergence(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let beta = cfg.problem.beta;
    let ml_cfg = &cfg.problem.ml_cfg;
    let rows = convergence_study(beta, &cfg.convergence_steps, ml_cfg)?;
    let table: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                Cell::from(r.steps),
                Cell::F(r.uniform_error),
                Cell::from(r.uniform_order),
                Cell::F(r.graded_error),
                Cell::from(r.graded_order),
                Cell::F(r.residual_l2),
                Cell::from(r.residual_order),
                Cell::F(r.residual_max),
                Cell::F(r.final_value),
            ]
        })
        .collect();
    let n_max = *cfg.convergence_steps.iter().max().expect("nonempty");
    let near_one = FracOrder::new(0.999)?;
    let heat = linear_benchmark(near_one, Arc::new(TimeGrid::uniform(n_max)?), ml_cfg)?;
    let u1 = *heat.computed.last().expect("nonempty");
    let e = (-1f64).exp();
    let mut w = ReportWriter::new(out, cfg.precision)?;
    w.table(
        "convergence.csv",
        &[
            "N",
            "uniform_max_error",
            "uniform_order",
            "graded_max_error",
            "graded_order",
            "l1_residual_l2",
            "l1_residual_order",
            "l1_residual_max",
            "u_at_1",
        ],
        &table,
    )?;
    w.table(
        "heat_limit.csv",
        &["beta", "N", "u_at_1", "exp_minus_1", "gap"],
        &[vec![Cell::F(0.999), Cell::from(n_max), Cell::F(u1), Cell::F(e), Cell::F((u1 - e).abs())]],
    )?;
    let last = rows.last().expect("nonempty");
    Ok(Outcome {
        exit_code: 0,
        files: w.finish()?,
        summary: format!(
            "convergence: N = {} uniform error {:.3e}, graded error {:.3e}, residual {:.3e}",
            last.steps, last.uniform_error, last.graded_error, last.residual_l2
        ),
    })
}
