use super::TimeFn;
use crate::error::{data, domain, Result};
use crate::lattice::SpectralField;
use crate::mild::Trajectory;

/// The nonlocal initial functional `H`.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlocalSpec {
    /// `∫_0^1 ω(s) u(s) ds` by the trapezoid rule on the grid.
    Integral { omega: TimeFn },
    /// `Σ c_i u(t_i)` with linear interpolation in time.
    Multipoint(Vec<(f64, f64)>),
    /// `u(1)`.
    Periodic,
    /// A prescribed `u_0`.
    Fixed(SpectralField),
}

impl NonlocalSpec {
    pub fn validate(&self, modes: usize) -> Result<()> {
        match self {
            NonlocalSpec::Integral { omega } => {
                if !omega.is_finite() {
                    return Err(domain("omega must be finite"));
                }
            }
            NonlocalSpec::Multipoint(pts) => {
                if pts.is_empty() {
                    return Err(domain("multipoint functional needs at least one point"));
                }
                for &(t, c) in pts {
                    if !(t >= 0.0 && t <= 1.0) {
                        return Err(domain(format!("multipoint node {t} outside [0, 1]")));
                    }
                    if !(c >= 0.0) || !c.is_finite() {
                        return Err(domain(format!("multipoint weight {c} must be finite and >= 0")));
                    }
                }
            }
            NonlocalSpec::Periodic => {}
            NonlocalSpec::Fixed(u0) => {
                if u0.len() != modes {
                    return Err(data(format!("u0 has {} modes, problem {modes}", u0.len())));
                }
            }
        }
        Ok(())
    }

    /// `c · H`.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            NonlocalSpec::Integral { omega } => NonlocalSpec::Integral {
                omega: omega.scaled(c),
            },
            NonlocalSpec::Multipoint(p) => {
                NonlocalSpec::Multipoint(p.iter().map(|&(t, w)| (t, c * w)).collect())
            }
            // u(1) scaled is the single-point functional with weight c.
            NonlocalSpec::Periodic => NonlocalSpec::Multipoint(vec![(1.0, c)]),
            NonlocalSpec::Fixed(u0) => NonlocalSpec::Fixed(u0.scaled(c)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NonlocalSpec::Integral { .. } => "integral",
            NonlocalSpec::Multipoint(_) => "multipoint",
            NonlocalSpec::Periodic => "periodic",
            NonlocalSpec::Fixed(_) => "fixed",
        }
    }

    /// `H[u]`.
    pub fn eval(&self, u: &Trajectory) -> Result<SpectralField> {
        match self {
            NonlocalSpec::Integral { omega } => {
                let grid = u.grid();
                let q = grid.trapezoid_weights();
                let mut acc = vec![0.0; u.modes()];
                for ((f, &t), qn) in u.values().iter().zip(grid.nodes()).zip(&q) {
                    let w = qn * omega.eval(t);
                    for (a, c) in acc.iter_mut().zip(f.coeffs()) {
                        *a += w * c;
                    }
                }
                SpectralField::new(acc)
            }
            NonlocalSpec::Multipoint(pts) => {
                let mut acc = SpectralField::zeros(u.modes());
                for &(t, c) in pts {
                    if !(t >= 0.0 && t <= 1.0) {
                        return Err(domain(format!("multipoint node {t} outside the grid range")));
                    }
                    acc = acc.combine(1.0, &u.interpolate(t)?, c);
                }
                Ok(acc)
            }
            NonlocalSpec::Periodic => Ok(u.last().clone()),
            NonlocalSpec::Fixed(u0) => {
                if u0.len() != u.modes() {
                    return Err(data("u0 and trajectory differ in mode count"));
                }
                Ok(u0.clone())
            }
        }
    }
}

/// `H[u]`.
pub fn eval_h(spec: &NonlocalSpec, u: &Trajectory) -> Result<SpectralField> {
    spec.eval(u)
}
