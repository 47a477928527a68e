use super::sampling::{sample_ball, sample_boundary, sample_rng};
use super::{NonlinearityKind, NonlocalSpec, ProblemSpec};
use crate::error::{domain, Error, Result};
use crate::lattice::{ConeKind, SpectralField};
use crate::mild::{SolutionOperator, Trajectory};
use crate::specfun::gamma_pos;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Outcome per hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// `F` bounded on `K̄_α`, nonnegative, and `F(t, u) ≥ γ_α(t)` on `∂K_α`.
    pub f2: bool,
    /// `H[u] ≥ Φ_α` on `∂K_α`.
    pub h1: bool,
    /// `b(t_0) > audit_floor`.
    pub h2: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.f2 && self.h1 && self.h2
    }
}

/// Computed constants and lower bounds for the existence hypotheses.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub t0: f64,
    pub t0_index: usize,
    pub samples: usize,
    pub seed: u64,
    pub cone_kind: ConeKind,
    /// `max(M_analytic, M_sampled)`.
    pub m_alpha: f64,
    /// `‖ρ‖_{L¹}‖φ_0‖ + ‖σ‖_∞ |Ω|^{1/2}` for the built-in nonlinearity.
    pub m_alpha_analytic: Option<f64>,
    /// `max ‖F(t_n, u(t_n))‖` over ball samples.
    pub m_alpha_sampled: f64,
    /// `max(N_analytic, N_sampled)`.
    pub n_alpha: f64,
    pub n_alpha_analytic: f64,
    pub n_alpha_sampled: f64,
    /// Nodal minimum of `ω` on the grid (integral functional only).
    pub omega0: Option<f64>,
    pub phi_alpha: SpectralField,
    pub gamma_alpha: Trajectory,
    /// `‖S_β(t_0)Φ_α + 𝒢γ_α(t_0)‖`.
    pub b_t0: f64,
    /// `M_α / Γ(β + 1)`: bound on `sup ‖𝒢F(·, u)‖` over `K̄_α`.
    pub volterra_bound: f64,
    /// `min (F − γ_α)` nodal over boundary samples.
    pub f2_margin: f64,
    /// `min F` nodal over ball samples.
    pub f_min: f64,
    /// `min (H[u] − Φ_α)` nodal over boundary samples.
    pub h1_margin: f64,
    /// `min ‖(𝒯u)(t_0)‖` over boundary samples.
    pub floor_min: f64,
    /// Absolute nodal tolerance used in the comparisons.
    pub tolerance: f64,
    pub audit_floor: f64,
    pub passed: HypothesisFlags,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.passed.all()
    }
}

fn nodal_min_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x - y).fold(f64::INFINITY, f64::min)
}

struct SampleStats {
    f_sup: f64,
    f_min: f64,
    h_norm: f64,
    f2_margin: f64,
    h1_margin: f64,
    floor: f64,
}

/// Audits the existence hypotheses at `t_0` with `samples` boundary and
/// `samples` ball samples drawn from independent streams of `seed`.
///
/// `t_0` must be a grid node in `(0, 1]`.
pub fn audit(problem: &ProblemSpec, t0: f64, samples: usize, seed: u64) -> Result<AuditReport> {
    problem.validate()?;
    if !(t0 > 0.0 && t0 <= 1.0) {
        return Err(domain(format!("t0 must lie in (0, 1], got {t0}")));
    }
    let t0_index = problem
        .grid
        .index_of(t0)
        .ok_or_else(|| domain(format!("t0 = {t0} is not a node of the time grid")))?;
    if samples == 0 {
        return Err(domain("the audit needs at least one sample"));
    }
    let (rho, sigma_t, phi0) = match &problem.nonlinearity.kind {
        NonlinearityKind::Custom(m) => {
            return Err(Error::AuditUnavailable(format!(
                "no lower bound gamma_alpha can be derived for the custom nonlinearity '{}'",
                m.name
            )))
        }
        NonlinearityKind::Zero => (None, None, None),
        NonlinearityKind::Saturating { rho, sigma_t, phi0 } => (Some(*rho), Some(*sigma_t), Some(phi0.clone())),
    };
    let op = SolutionOperator::new(problem)?;
    let tr = op.transform();
    let modes = problem.modes();
    let alpha = problem.alpha;
    let sigma = problem.cone.sigma_cone;
    let e1_bound = problem.cone.kind == ConeKind::FirstModeBound;
    let mut notes = Vec::new();
    let tolerance = problem.cone.pos_tol * alpha.max(1.0);

    // Φ_α from the cone lower bound u(t) ≥ σα e_1 on ∂K_α.
    let base = if e1_bound {
        problem.cone.e1.scaled(sigma * alpha)
    } else {
        SpectralField::zeros(modes)
    };
    let mut h1_structural = true;
    let mut omega0 = None;
    let (phi_alpha, n_alpha_analytic) = match &problem.nonlocal {
        NonlocalSpec::Integral { omega } => {
            let w0 = omega.min_on(problem.grid.nodes());
            omega0 = Some(w0);
            if !(w0 > 0.0) {
                h1_structural = false;
                notes.push(format!("omega_0 = {w0:e} <= 0: no positive lower bound for H"));
            }
            (base.scaled(w0.max(0.0)), omega.l1_norm() * alpha)
        }
        NonlocalSpec::Multipoint(pts) => {
            let c: f64 = pts.iter().map(|p| p.1).sum();
            (base.scaled(c), c * alpha)
        }
        NonlocalSpec::Periodic => (base, alpha),
        NonlocalSpec::Fixed(u0) => {
            if tr.to_nodal(u0).iter().any(|v| *v < -tolerance) {
                h1_structural = false;
                notes.push("fixed u0 is not nonnegative".into());
                (SpectralField::zeros(modes), u0.l2_norm())
            } else {
                (u0.clone(), u0.l2_norm())
            }
        }
    };
    if !e1_bound {
        notes.push("positive cone: the e1 lower bound is not used, Phi_alpha comes from H only".into());
    }

    // γ_α(t) = ρ(t) φ_0, the σ-term being nonnegative on the cone.
    let gamma_alpha = match (&rho, &phi0) {
        (Some(r), Some(p)) => Trajectory::from_fn(problem.grid.clone(), |_, t| p.scaled(r.eval(t)))?,
        _ => Trajectory::zeros(problem.grid.clone(), modes),
    };
    let m_alpha_analytic = match (&rho, &sigma_t, &phi0) {
        (Some(r), Some(s), Some(p)) => Some(r.l1_norm() * p.l2_norm() + s.sup_norm() * PI.sqrt()),
        _ => Some(0.0),
    };

    let b_vec = op.free_evolution(&phi_alpha)?.at(t0_index).add(op.volterra_part(&gamma_alpha)?.at(t0_index));
    let b_t0 = b_vec.l2_norm();

    let gamma_nodal: Vec<Vec<f64>> = gamma_alpha.values().iter().map(|g| tr.to_nodal(g)).collect();
    let phi_nodal = tr.to_nodal(&phi_alpha);
    let stats = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<SampleStats> {
            let mut rng = sample_rng(seed, 2 * i);
            let ub = sample_boundary(problem, tr, &mut rng)?;
            let mut rng = sample_rng(seed, 2 * i + 1);
            let ui = sample_ball(problem, tr, &mut rng)?;

            let fi = op.forcing(&ui)?;
            let f_sup = fi.sup_norm();
            let f_min = fi
                .values()
                .iter()
                .map(|f| tr.to_nodal(f).into_iter().fold(f64::INFINITY, f64::min))
                .fold(f64::INFINITY, f64::min);
            let h_norm = problem.nonlocal.eval(&ui)?.l2_norm().max(problem.nonlocal.eval(&ub)?.l2_norm());

            let parts = op.parts(&ub)?;
            let fb = op.forcing(&ub)?;
            let f2_margin = fb
                .values()
                .iter()
                .zip(&gamma_nodal)
                .map(|(f, g)| nodal_min_diff(&tr.to_nodal(f), g))
                .fold(f64::INFINITY, f64::min);
            let h1_margin = nodal_min_diff(&tr.to_nodal(&parts.initial), &phi_nodal);
            let t_u0 = if t0_index == 0 {
                parts.initial.clone()
            } else {
                parts.free.at(t0_index).add(parts.volterra.at(t0_index))
            };
            Ok(SampleStats {
                f_sup: f_sup.max(fb.sup_norm()),
                f_min,
                h_norm,
                f2_margin,
                h1_margin,
                floor: t_u0.l2_norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let fold_max = |f: fn(&SampleStats) -> f64| stats.iter().map(f).fold(0.0, f64::max);
    let fold_min = |f: fn(&SampleStats) -> f64| stats.iter().map(f).fold(f64::INFINITY, f64::min);
    let m_alpha_sampled = fold_max(|s| s.f_sup);
    let n_alpha_sampled = fold_max(|s| s.h_norm);
    let f_min = fold_min(|s| s.f_min);
    let f2_margin = fold_min(|s| s.f2_margin);
    let h1_margin = fold_min(|s| s.h1_margin);
    let floor_min = fold_min(|s| s.floor);
    let m_alpha = m_alpha_analytic.unwrap_or(0.0).max(m_alpha_sampled);
    let n_alpha = n_alpha_analytic.max(n_alpha_sampled);

    let f2 = m_alpha.is_finite() && f_min >= -tolerance && f2_margin >= -tolerance;
    if f_min < -tolerance {
        notes.push(format!("F takes negative nodal values ({f_min:e}) on the cone ball"));
    }
    let h1 = h1_structural && h1_margin >= -tolerance;
    let h2 = b_t0 > problem.audit_floor;
    Ok(AuditReport {
        t0,
        t0_index,
        samples,
        seed,
        cone_kind: problem.cone.kind,
        m_alpha,
        m_alpha_analytic,
        m_alpha_sampled,
        n_alpha,
        n_alpha_analytic,
        n_alpha_sampled,
        omega0,
        phi_alpha,
        gamma_alpha,
        b_t0,
        volterra_bound: m_alpha / gamma_pos(problem.beta.get() + 1.0),
        f2_margin,
        f_min,
        h1_margin,
        floor_min,
        tolerance,
        audit_floor: problem.audit_floor,
        passed: HypothesisFlags { f2, h1, h2 },
        notes,
    })
}
