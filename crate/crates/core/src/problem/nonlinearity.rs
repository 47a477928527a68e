use super::TimeFn;
use crate::error::{data, domain, Result};
use crate::lattice::{SineTransform, SpectralField};
use std::sync::Arc;

/// Pointwise map `(t, x, u) ↦ F`.
pub type NodalFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// A user-supplied nodal nonlinearity.
#[derive(Clone)]
pub struct CustomMap {
    pub name: String,
    pub map: Arc<NodalFn>,
}

impl CustomMap {
    pub fn new(name: impl Into<String>, map: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            map: Arc::new(map),
        }
    }
}

impl std::fmt::Debug for CustomMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CustomMap({})", self.name)
    }
}

impl PartialEq for CustomMap {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.map, &other.map)
    }
}

/// Nonlinearity kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearityKind {
    Zero,
    /// `ρ(t) φ_0(x) + σ(t) u/(1+u)`.
    Saturating {
        rho: TimeFn,
        sigma_t: TimeFn,
        phi0: SpectralField,
    },
    Custom(CustomMap),
}

/// A nonlinearity together with its nodal evaluation grid `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearitySpec {
    pub kind: NonlinearityKind,
    pub nodal_points: usize,
}

impl NonlinearitySpec {
    pub fn zero(nodal_points: usize) -> Self {
        Self {
            kind: NonlinearityKind::Zero,
            nodal_points,
        }
    }

    pub fn saturating(rho: TimeFn, sigma_t: TimeFn, phi0: SpectralField, nodal_points: usize) -> Self {
        Self {
            kind: NonlinearityKind::Saturating { rho, sigma_t, phi0 },
            nodal_points,
        }
    }

    pub fn custom(map: CustomMap, nodal_points: usize) -> Self {
        Self {
            kind: NonlinearityKind::Custom(map),
            nodal_points,
        }
    }

    /// Checks `ρ, σ ≥ 0` on `[0, 1]` and `φ_0 ≥ 0` at the nodes.
    pub fn validate(&self, modes: usize) -> Result<()> {
        if let NonlinearityKind::Saturating { rho, sigma_t, phi0 } = &self.kind {
            if !rho.is_finite() || !sigma_t.is_finite() {
                return Err(domain("saturating coefficients must be finite"));
            }
            if rho.inf() < 0.0 {
                return Err(domain(format!("rho must be >= 0 on [0, 1] (inf {})", rho.inf())));
            }
            if sigma_t.inf() < 0.0 {
                return Err(domain(format!("sigma_t must be >= 0 on [0, 1] (inf {})", sigma_t.inf())));
            }
            if phi0.len() != modes {
                return Err(data(format!("phi0 has {} modes, problem {modes}", phi0.len())));
            }
            let tr = SineTransform::new(modes, self.nodal_points)?;
            if tr.to_nodal(phi0).iter().any(|v| *v < -1e-12) {
                return Err(domain("phi0 must be nonnegative at the nodes"));
            }
        }
        if self.nodal_points < modes + 1 {
            return Err(crate::Error::Aliasing {
                modes,
                points: self.nodal_points,
                needed: modes + 1,
            });
        }
        Ok(())
    }

    /// `c · F`.
    pub fn scaled(&self, c: f64) -> Self {
        let kind = match &self.kind {
            NonlinearityKind::Zero => NonlinearityKind::Zero,
            NonlinearityKind::Saturating { rho, sigma_t, phi0 } => NonlinearityKind::Saturating {
                rho: rho.scaled(c),
                sigma_t: sigma_t.scaled(c),
                phi0: phi0.clone(),
            },
            NonlinearityKind::Custom(m) => {
                let inner = m.map.clone();
                NonlinearityKind::Custom(CustomMap::new(format!("{c}*{}", m.name), move |t, x, u| {
                    c * inner(t, x, u)
                }))
            }
        };
        Self {
            kind,
            nodal_points: self.nodal_points,
        }
    }

    /// Evaluator with nodal data cached for the transform.
    pub fn prepare(&self, tr: &SineTransform) -> PreparedNonlinearity {
        let phi0 = match &self.kind {
            NonlinearityKind::Saturating { phi0, .. } => tr.to_nodal(phi0),
            _ => Vec::new(),
        };
        PreparedNonlinearity {
            spec: self.clone(),
            nodes: tr.nodes(),
            phi0,
        }
    }
}

/// [`NonlinearitySpec`] bound to one sine transform.
#[derive(Debug, Clone)]
pub struct PreparedNonlinearity {
    spec: NonlinearitySpec,
    nodes: Vec<f64>,
    phi0: Vec<f64>,
}

impl PreparedNonlinearity {
    /// Nodal values of `F(t, u)`.
    pub fn eval_nodal(&self, t: f64, u_nodal: &[f64]) -> Vec<f64> {
        match &self.spec.kind {
            NonlinearityKind::Zero => vec![0.0; u_nodal.len()],
            NonlinearityKind::Saturating { rho, sigma_t, .. } => {
                let (r, s) = (rho.eval(t), sigma_t.eval(t));
                u_nodal
                    .iter()
                    .zip(&self.phi0)
                    .map(|(&u, &p)| {
                        let u = u.max(0.0);
                        r * p + s * (u / (1.0 + u))
                    })
                    .collect()
            }
            NonlinearityKind::Custom(m) => u_nodal
                .iter()
                .zip(&self.nodes)
                .map(|(&u, &x)| (m.map)(t, x, u))
                .collect(),
        }
    }

    /// `F(t, u)` as a field: nodal evaluation followed by sine analysis.
    pub fn eval(&self, t: f64, u: &SpectralField, tr: &SineTransform) -> Result<SpectralField> {
        if u.coeffs().iter().any(|c| c.is_nan()) {
            return Err(data(format!("NaN in the state passed to F at t = {t}")));
        }
        if matches!(self.spec.kind, NonlinearityKind::Zero) {
            return Ok(SpectralField::zeros(u.len()));
        }
        let nodal = self.eval_nodal(t, &tr.to_nodal(u));
        if nodal.iter().any(|v| v.is_nan()) {
            return Err(data(format!("F produced NaN at t = {t}")));
        }
        tr.from_nodal(&nodal)
    }
}

/// `F(t, f)` on its nodal grid.
pub fn eval_f(spec: &NonlinearitySpec, t: f64, f: &SpectralField) -> Result<SpectralField> {
    let tr = SineTransform::new(f.len(), spec.nodal_points)?;
    spec.prepare(&tr).eval(t, f, &tr)
}
