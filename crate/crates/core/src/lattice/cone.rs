use super::{SineTransform, SpectralField};
use crate::error::{data, domain, Result};
use crate::mild::Trajectory;

/// Which cone membership is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    /// `u(t, ·) ≥ 0` for every `t`.
    Positive,
    /// `u(t, x) ≥ σ ‖u‖_∞ e_1(x)` for every `t`, `x`.
    FirstModeBound,
}

impl ConeKind {
    pub fn name(self) -> &'static str {
        match self {
            ConeKind::Positive => "positive",
            ConeKind::FirstModeBound => "e1-bound",
        }
    }
}

/// Cone parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSpec {
    pub kind: ConeKind,
    /// Lower-bound fraction `σ ∈ (0, 1)`.
    pub sigma_cone: f64,
    pub e1: SpectralField,
    /// Tolerance relative to the trajectory's sup norm.
    pub pos_tol: f64,
}

impl ConeSpec {
    pub fn new(kind: ConeKind, sigma_cone: f64, modes: usize, pos_tol: f64) -> Result<Self> {
        Self::with_e1(kind, sigma_cone, SpectralField::e1(modes), pos_tol)
    }

    pub fn with_e1(kind: ConeKind, sigma_cone: f64, e1: SpectralField, pos_tol: f64) -> Result<Self> {
        if !(sigma_cone > 0.0 && sigma_cone < 1.0) {
            return Err(domain(format!("sigma_cone must lie in (0, 1), got {sigma_cone}")));
        }
        if !(pos_tol >= 0.0) || !pos_tol.is_finite() {
            return Err(domain(format!("pos_tol must be finite and >= 0, got {pos_tol}")));
        }
        let nodal = SineTransform::square(e1.len())?.to_nodal(&e1);
        if nodal.iter().any(|v| !(*v > 0.0)) {
            return Err(domain("e1 must be strictly positive at the interior nodes"));
        }
        Ok(Self {
            kind,
            sigma_cone,
            e1,
            pos_tol,
        })
    }

    pub fn modes(&self) -> usize {
        self.e1.len()
    }
}

/// Result of [`cone_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConeReport {
    pub kind: ConeKind,
    /// `min_x (u(t_n, x) − σ ‖u‖_∞ e_1(x))` per time node.
    pub margins: Vec<f64>,
    /// `min_x u(t_n, x)` per time node.
    pub minima: Vec<f64>,
    /// Absolute tolerance `pos_tol · ‖u‖_∞`.
    pub tolerance: f64,
    pub sup_norm: f64,
    /// Membership in the cone of `kind`.
    pub member: bool,
    /// Plain positivity, whatever `kind` is.
    pub positive: bool,
    pub worst_margin: f64,
    pub worst_min: f64,
}

impl ConeReport {
    /// Largest violation below `−tolerance` (zero for members).
    pub fn violation(&self) -> f64 {
        let worst = match self.kind {
            ConeKind::Positive => self.worst_min,
            ConeKind::FirstModeBound => self.worst_margin,
        };
        (-worst - self.tolerance).max(0.0)
    }
}

/// Nodal cone membership of a trajectory on `X = points`.
pub fn cone_check(u: &Trajectory, cone: &ConeSpec, points: usize) -> Result<ConeReport> {
    if u.modes() != cone.modes() {
        return Err(data(format!(
            "trajectory has {} modes, cone {}",
            u.modes(),
            cone.modes()
        )));
    }
    let tr = SineTransform::new(cone.modes(), points)?;
    let e1 = tr.to_nodal(&cone.e1);
    let sup = u.sup_norm();
    let tolerance = cone.pos_tol * sup;
    let mut margins = Vec::with_capacity(u.len());
    let mut minima = Vec::with_capacity(u.len());
    for f in u.values() {
        let v = tr.to_nodal(f);
        let mut margin = f64::INFINITY;
        let mut min = f64::INFINITY;
        for (vi, ei) in v.iter().zip(&e1) {
            margin = margin.min(vi - cone.sigma_cone * sup * ei);
            min = min.min(*vi);
        }
        margins.push(margin);
        minima.push(min);
    }
    let worst_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let worst_min = minima.iter().copied().fold(f64::INFINITY, f64::min);
    let positive = worst_min >= -tolerance;
    let member = match cone.kind {
        ConeKind::Positive => positive,
        ConeKind::FirstModeBound => worst_margin >= -tolerance,
    };
    Ok(ConeReport {
        kind: cone.kind,
        margins,
        minima,
        tolerance,
        sup_norm: sup,
        member,
        positive,
        worst_margin,
        worst_min,
    })
}
