use super::ProblemSpec;
use crate::error::{Error, Result};
use crate::lattice::{ConeKind, SineTransform, SpectralField};
use crate::mild::Trajectory;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Independent generator for sample `stream` under `seed`.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random trajectory whose nodal values are `≥ 0` at every `(t_n, x_i)`:
/// a sum of up to three separable bumps `τ_r(t) |sin(k_r x)|^{q_r}`.
fn nonnegative_profile(problem: &ProblemSpec, tr: &SineTransform, rng: &mut ChaCha8Rng) -> Result<Trajectory> {
    let xs = tr.nodes();
    let kmax = problem.modes().min(6);
    let parts = rng.gen_range(1..=3);
    let comps: Vec<_> = (0..parts)
        .map(|_| {
            let amp: f64 = rng.gen_range(0.1..1.0);
            let k = rng.gen_range(1..=kmax) as f64;
            let q = rng.gen_range(1..=2);
            let (a, b): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let freq: f64 = rng.gen_range(0.0..2.0);
            let phase: f64 = rng.gen_range(0.0..2.0 * PI);
            (amp, k, q, a, b, freq, phase)
        })
        .collect();
    let values = problem
        .grid
        .nodes()
        .iter()
        .map(|&t| {
            let nodal: Vec<f64> = xs
                .iter()
                .map(|&x| {
                    comps
                        .iter()
                        .map(|&(amp, k, q, a, b, freq, phase)| {
                            let time = a + b * (0.5 + 0.5 * (2.0 * PI * freq * t + phase).cos());
                            amp * time * (k * x).sin().abs().powi(q)
                        })
                        .sum()
                })
                .collect();
            tr.from_nodal(&nodal)
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(problem.grid.clone(), values)
}

/// Random `u` on the cone sphere `∂K_α` (`‖u‖_∞ = α`).
///
/// For the e1-bounded cone, `u(t) = σα e_1 + s w(t)` with `w ≥ 0` nodal and
/// `s` the largest step keeping `‖u(t_n)‖ ≤ α` at every node, so the sup is
/// attained and `u ≥ σ‖u‖_∞ e_1`. For the positive cone, `u = α w/‖w‖_∞`.
pub fn sample_boundary(problem: &ProblemSpec, tr: &SineTransform, rng: &mut ChaCha8Rng) -> Result<Trajectory> {
    let alpha = problem.alpha;
    let w = nonnegative_profile(problem, tr, rng)?;
    match problem.cone.kind {
        ConeKind::Positive => {
            let sup = w.sup_norm();
            if !(sup > 0.0) {
                return Err(Error::Data("degenerate boundary sample".into()));
            }
            Ok(w.scaled(alpha / sup))
        }
        ConeKind::FirstModeBound => {
            let base = problem.cone.e1.scaled(problem.cone.sigma_cone * alpha);
            let bb = base.dot(&base);
            // Positive root of ‖base + s w_n‖² = α².
            let s = w
                .values()
                .iter()
                .filter_map(|wn| {
                    let a = wn.dot(wn);
                    if a == 0.0 {
                        return None;
                    }
                    let b = base.dot(wn);
                    let c = bb - alpha * alpha;
                    Some((-b + (b * b - a * c).sqrt()) / a)
                })
                .fold(f64::INFINITY, f64::min);
            if !s.is_finite() {
                return Err(Error::Data("degenerate boundary sample".into()));
            }
            let values: Vec<SpectralField> = w.values().iter().map(|wn| base.combine(1.0, wn, s)).collect();
            let u = Trajectory::new(problem.grid.clone(), values)?;
            // Rounding in the root leaves a relative defect of order 1e-16.
            Ok(u.scaled(alpha / u.sup_norm()))
        }
    }
}

/// Random `u` in the closed cone ball `K̄_α`: a boundary sample scaled by `r ∈ (0, 1]`.
pub fn sample_ball(problem: &ProblemSpec, tr: &SineTransform, rng: &mut ChaCha8Rng) -> Result<Trajectory> {
    let u = sample_boundary(problem, tr, rng)?;
    let r: f64 = 1.0 - rng.gen_range(0.0..1.0);
    Ok(u.scaled(r))
}
