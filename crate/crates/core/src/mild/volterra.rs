use super::weights::cell_moments;
use super::{TimeGrid, Trajectory};
use crate::error::{data, Result};
use crate::lattice::{DiagonalGenerator, SpectralField};
use crate::quad::gauss_legendre10_nodes;
use crate::specfun::{gamma_pos, ml, FracOrder, MLEvalConfig};
use rayon::prelude::*;
use std::sync::Arc;

/// How the operator factor `E_{β,β}(−μ(t − s)^β)` enters the cell integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelRule {
    /// The full per-mode kernel `(t−s)^{β−1} E_{β,β}(−μ(t−s)^β)` is integrated
    /// against the linear hat functions.
    #[default]
    Exact,
    /// The factor is sampled at the nodes and multiplied into the scalar
    /// product-trapezoid weights.
    Folded,
}

impl KernelRule {
    pub fn name(self) -> &'static str {
        match self {
            KernelRule::Exact => "exact",
            KernelRule::Folded => "folded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// Uniform grids: `w(n, j) = a[ℓ] + [j ≥ 1]·b[ℓ]` with lag `ℓ = n − j`.
    Lag { a: Vec<Vec<f64>>, b: Vec<Vec<f64>> },
    /// Packed lower triangle per mode, index `n(n+1)/2 + j`.
    Dense(Vec<Vec<f64>>),
}

/// Discrete `𝒢 f(t_n) = Σ_j w_m(n, j) f_m(t_j)` approximating
/// `∫_0^{t_n} (t_n − r)^{β−1} T_β(t_n − r) f(r) dr` mode by mode.
///
/// All weights are nonnegative. Weights and Mittag-Leffler values are
/// computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraOperator {
    beta: FracOrder,
    grid: Arc<TimeGrid>,
    mu: Vec<f64>,
    rule: KernelRule,
    storage: Storage,
}

/// Kernel `u^{β−1} E_{β,β}(−μ u^β)`.
fn kernel(beta: f64, mu: f64, u: f64, cfg: &MLEvalConfig) -> Result<f64> {
    Ok(u.powf(beta - 1.0) * ml(beta, beta, -mu * u.powf(beta), cfg)?)
}

/// `(∫ k(u)(u − τb)/h, ∫ k(u)(τa − u)/h)` over `[τb, τa]`: the weights of the
/// nodes at lag `τa` and `τb` from one cell.
fn cell_exact(beta: f64, mu: f64, tau_b: f64, tau_a: f64, cfg: &MLEvalConfig) -> Result<(f64, f64)> {
    let h = tau_a - tau_b;
    if mu == 0.0 {
        let (i0, i1) = cell_moments(beta, tau_b, tau_a);
        let g = gamma_pos(beta);
        return Ok(((i0 - i1 / h) / g, i1 / h / g));
    }
    if tau_b == 0.0 {
        // ∫_0^h u^{β−1}E_{β,β}(−μu^β) u^k du in closed form through E_{β,β+1}, E_{β,β+2}.
        let hb = h.powf(beta);
        let z = -mu * hb;
        let e1 = ml(beta, beta + 1.0, z, cfg)?;
        let e2 = ml(beta, beta + 2.0, z, cfg)?;
        return Ok((hb * (e1 - e2), hb * e2));
    }
    // Smooth kernel: Gauss–Legendre on geometric pieces of ratio ≤ 2.
    let pieces = ((tau_a / tau_b).log2().ceil() as usize).max(1);
    let ratio = (tau_a / tau_b).powf(1.0 / pieces as f64);
    let (mut far, mut near) = (0.0, 0.0);
    let mut lo = tau_b;
    for p in 0..pieces {
        let hi = if p + 1 == pieces { tau_a } else { lo * ratio };
        for (u, w) in gauss_legendre10_nodes(lo, hi) {
            let k = w * kernel(beta, mu, u, cfg)?;
            far += k * (u - tau_b);
            near += k * (tau_a - u);
        }
        lo = hi;
    }
    Ok((far / h, near / h))
}

impl VolterraOperator {
    pub fn new(
        g: &DiagonalGenerator,
        beta: FracOrder,
        grid: Arc<TimeGrid>,
        rule: KernelRule,
        cfg: &MLEvalConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        let b = beta.get();
        let n = grid.steps();
        let t = grid.nodes().to_vec();
        let mu = g.mu().to_vec();
        let storage = if grid.is_uniform() {
            let h = 1.0 / n as f64;
            let tables: Vec<(Vec<f64>, Vec<f64>)> = mu
                .par_iter()
                .map(|&m| -> Result<(Vec<f64>, Vec<f64>)> {
                    let mut a = vec![0.0; n + 1];
                    let mut bb = vec![0.0; n + 1];
                    match rule {
                        KernelRule::Exact => {
                            for l in 1..=n {
                                let (far, near) =
                                    cell_exact(b, m, (l - 1) as f64 * h, l as f64 * h, cfg)?;
                                a[l] += far;
                                bb[l - 1] += near;
                            }
                        }
                        KernelRule::Folded => {
                            let mult = |l: usize| -> Result<f64> {
                                if l == 0 {
                                    Ok(1.0 / gamma_pos(b))
                                } else {
                                    ml(b, b, -m * (l as f64 * h).powf(b), cfg)
                                }
                            };
                            let mut mults = Vec::with_capacity(n + 1);
                            for l in 0..=n {
                                mults.push(mult(l)?);
                            }
                            for l in 1..=n {
                                let (i0, i1) = cell_moments(b, (l - 1) as f64 * h, l as f64 * h);
                                a[l] += (i0 - i1 / h) * mults[l];
                                bb[l - 1] += i1 / h * mults[l - 1];
                            }
                        }
                    }
                    Ok((a, bb))
                })
                .collect::<Result<_>>()?;
            let (a, bb) = tables.into_iter().unzip();
            Storage::Lag { a, b: bb }
        } else {
            let tri = (n + 1) * (n + 2) / 2;
            let dense: Vec<Vec<f64>> = mu
                .par_iter()
                .map(|&m| -> Result<Vec<f64>> {
                    let mut w = vec![0.0; tri];
                    for nn in 1..=n {
                        let base = nn * (nn + 1) / 2;
                        for j in 0..nn {
                            let tau_a = t[nn] - t[j];
                            let tau_b = if j + 1 == nn { 0.0 } else { t[nn] - t[j + 1] };
                            match rule {
                                KernelRule::Exact => {
                                    let (far, near) = cell_exact(b, m, tau_b, tau_a, cfg)?;
                                    w[base + j] += far;
                                    w[base + j + 1] += near;
                                }
                                KernelRule::Folded => {
                                    let h = t[j + 1] - t[j];
                                    let (i0, i1) = cell_moments(b, tau_b, tau_a);
                                    let ma = ml(b, b, -m * tau_a.powf(b), cfg)?;
                                    let mb = if tau_b == 0.0 {
                                        1.0 / gamma_pos(b)
                                    } else {
                                        ml(b, b, -m * tau_b.powf(b), cfg)?
                                    };
                                    w[base + j] += (i0 - i1 / h) * ma;
                                    w[base + j + 1] += i1 / h * mb;
                                }
                            }
                        }
                    }
                    Ok(w)
                })
                .collect::<Result<_>>()?;
            Storage::Dense(dense)
        };
        Ok(Self {
            beta,
            grid,
            mu,
            rule,
            storage,
        })
    }

    pub fn beta(&self) -> FracOrder {
        self.beta
    }

    pub fn grid(&self) -> &Arc<TimeGrid> {
        &self.grid
    }

    pub fn rule(&self) -> KernelRule {
        self.rule
    }

    pub fn modes(&self) -> usize {
        self.mu.len()
    }

    /// Weight of `f_m(t_j)` in `(𝒢f)_m(t_n)`; `mode` is 0-based.
    pub fn weight(&self, mode: usize, n: usize, j: usize) -> f64 {
        assert!(j <= n && n <= self.grid.steps());
        match &self.storage {
            Storage::Lag { a, b } => {
                let l = n - j;
                let mut w = a[mode][l];
                if j >= 1 {
                    w += b[mode][l];
                }
                w
            }
            Storage::Dense(d) => d[mode][n * (n + 1) / 2 + j],
        }
    }

    /// One mode of `𝒢`: `out[n] = Σ_{j ≤ n} w(n, j) col[j]`.
    pub fn apply_mode(&self, mode: usize, col: &[f64]) -> Vec<f64> {
        let n = self.grid.steps();
        assert_eq!(col.len(), n + 1);
        let mut out = vec![0.0; n + 1];
        match &self.storage {
            Storage::Lag { a, b } => {
                let (a, b) = (&a[mode], &b[mode]);
                for (nn, o) in out.iter_mut().enumerate().skip(1) {
                    let mut s = a[nn] * col[0];
                    for j in 1..=nn {
                        s += (a[nn - j] + b[nn - j]) * col[j];
                    }
                    *o = s;
                }
            }
            Storage::Dense(d) => {
                let w = &d[mode];
                for (nn, o) in out.iter_mut().enumerate().skip(1) {
                    let base = nn * (nn + 1) / 2;
                    *o = (0..=nn).map(|j| w[base + j] * col[j]).sum();
                }
            }
        }
        out
    }

    /// `𝒢 f` on the operator's grid; node 0 is the zero field.
    pub fn apply(&self, forcing: &Trajectory) -> Result<Trajectory> {
        if !forcing.same_grid(&self.grid) {
            return Err(data("forcing lives on a different time grid"));
        }
        if forcing.modes() != self.modes() {
            return Err(data(format!(
                "forcing has {} modes, operator {}",
                forcing.modes(),
                self.modes()
            )));
        }
        let n = self.grid.steps();
        let cols: Vec<Vec<f64>> = (0..self.modes())
            .into_par_iter()
            .map(|m| {
                let col: Vec<f64> = forcing.values().iter().map(|f| f.coeffs()[m]).collect();
                self.apply_mode(m, &col)
            })
            .collect();
        let values = (0..=n)
            .map(|nn| SpectralField::from_vec_unchecked(cols.iter().map(|c| c[nn]).collect()))
            .collect();
        Trajectory::new(self.grid.clone(), values)
    }
}

/// `𝒢 f` for a prebuilt operator.
pub fn volterra_apply(op: &VolterraOperator, forcing: &Trajectory) -> Result<Trajectory> {
    op.apply(forcing)
}
