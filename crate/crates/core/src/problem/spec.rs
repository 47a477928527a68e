use super::{NonlinearitySpec, NonlocalSpec, TimeFn};
use crate::error::{data, domain, Result};
use crate::lattice::{ConeKind, ConeSpec, DiagonalGenerator, SpectralField};
use crate::mild::{KernelRule, TimeGrid};
use crate::specfun::{FracOrder, MLEvalConfig};
use std::sync::Arc;

/// Default positivity tolerance, relative to the sup norm.
pub const DEFAULT_POS_TOL: f64 = 1e-8;
/// Default threshold below which `b(t_0)` counts as zero.
pub const DEFAULT_AUDIT_FLOOR: f64 = 1e-10;

/// How `λ` is determined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaMode {
    /// `λ = α / ‖𝒯u‖_∞` from the normalized iteration.
    Eigen,
    /// A prescribed `λ`; the solver looks for `u = λ𝒯u` without normalization.
    Fixed(f64),
}

/// Everything that defines `D^β u = A u + λ F(t, u)`, `u(0) = λ H[u]`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub beta: FracOrder,
    pub generator: DiagonalGenerator,
    pub grid: Arc<TimeGrid>,
    pub nonlinearity: NonlinearitySpec,
    pub nonlocal: NonlocalSpec,
    pub cone: ConeSpec,
    /// Target norm `‖u‖_∞ = α`.
    pub alpha: f64,
    pub lambda_mode: LambdaMode,
    pub ml_cfg: MLEvalConfig,
    pub kernel_rule: KernelRule,
    pub audit_floor: f64,
}

impl ProblemSpec {
    /// Problem with the Dirichlet Laplacian, an e1-bounded cone and default numerics.
    pub fn new(
        beta: FracOrder,
        modes: usize,
        grid: Arc<TimeGrid>,
        nonlinearity: NonlinearitySpec,
        nonlocal: NonlocalSpec,
        sigma_cone: f64,
        alpha: f64,
    ) -> Result<Self> {
        let spec = Self {
            beta,
            generator: DiagonalGenerator::dirichlet_laplacian(modes),
            grid,
            nonlinearity,
            nonlocal,
            cone: ConeSpec::new(ConeKind::FirstModeBound, sigma_cone, modes, DEFAULT_POS_TOL)?,
            alpha,
            lambda_mode: LambdaMode::Eigen,
            ml_cfg: MLEvalConfig::default(),
            kernel_rule: KernelRule::default(),
            audit_floor: DEFAULT_AUDIT_FLOOR,
        };
        spec.check_consistent()?;
        Ok(spec)
    }

    /// The fractional heat instance with `β = 1/2`, `φ_0 = sin x`,
    /// `ρ = e^{−t}`, `σ = cos²(πt)`, `ω ≡ 1`, `σ_cone = 0.1`, `α = 1` on a
    /// uniform grid with `steps` steps and `X = modes + 1`.
    pub fn heat_instance(modes: usize, steps: usize) -> Result<Self> {
        let phi0 = SpectralField::sine(modes, 1, 1.0);
        let f = NonlinearitySpec::saturating(
            TimeFn::Exp { amp: 1.0, rate: 1.0 },
            TimeFn::CosSq { amp: 1.0, freq: 1.0 },
            phi0,
            modes + 1,
        );
        Self::new(
            FracOrder::new(0.5)?,
            modes,
            Arc::new(TimeGrid::uniform(steps)?),
            f,
            NonlocalSpec::Integral {
                omega: TimeFn::Const(1.0),
            },
            0.1,
            1.0,
        )
    }

    pub fn modes(&self) -> usize {
        self.generator.len()
    }

    pub fn nodal_points(&self) -> usize {
        self.nonlinearity.nodal_points
    }

    /// Sizes agree across components and scalar parameters are in range.
    pub fn check_consistent(&self) -> Result<()> {
        let m = self.modes();
        if m == 0 {
            return Err(domain("at least one mode is required"));
        }
        if self.cone.modes() != m {
            return Err(data(format!("cone has {} modes, generator {m}", self.cone.modes())));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(domain(format!("alpha must be finite and > 0, got {}", self.alpha)));
        }
        if let LambdaMode::Fixed(l) = self.lambda_mode {
            if !(l > 0.0) || !l.is_finite() {
                return Err(domain(format!("a fixed lambda must be finite and > 0, got {l}")));
            }
        }
        if !(self.audit_floor >= 0.0) {
            return Err(domain("audit_floor must be >= 0"));
        }
        self.ml_cfg.validate()?;
        self.nonlinearity.validate(m)?;
        self.nonlocal.validate(m)
    }

    /// [`check_consistent`](Self::check_consistent) plus `μ_1 > 0`.
    pub fn validate(&self) -> Result<()> {
        self.check_consistent()?;
        if !(self.generator.mu()[0] > 0.0) {
            return Err(domain("the generator must satisfy mu_1 > 0"));
        }
        Ok(())
    }

    /// Same problem with `F` and `H` both multiplied by `c`.
    pub fn with_operator_scale(&self, c: f64) -> Self {
        Self {
            nonlinearity: self.nonlinearity.scaled(c),
            nonlocal: self.nonlocal.scaled(c),
            ..self.clone()
        }
    }

    /// Same problem on another time grid.
    pub fn with_grid(&self, grid: Arc<TimeGrid>) -> Self {
        Self {
            grid,
            ..self.clone()
        }
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self {
            alpha,
            ..self.clone()
        }
    }

    /// Same problem truncated or extended to `modes` modes with `X = modes + 1`.
    pub fn with_modes(&self, modes: usize) -> Result<Self> {
        let resize = |f: &SpectralField| {
            let mut c = f.coeffs().to_vec();
            c.resize(modes, 0.0);
            SpectralField::new(c)
        };
        let mut nonlinearity = self.nonlinearity.clone();
        nonlinearity.nodal_points = modes + 1;
        if let super::NonlinearityKind::Saturating { phi0, .. } = &mut nonlinearity.kind {
            *phi0 = resize(phi0)?;
        }
        let nonlocal = match &self.nonlocal {
            NonlocalSpec::Fixed(u0) => NonlocalSpec::Fixed(resize(u0)?),
            other => other.clone(),
        };
        let mu: Vec<f64> = if modes <= self.modes() {
            self.generator.mu()[..modes].to_vec()
        } else {
            DiagonalGenerator::dirichlet_laplacian(modes).mu().to_vec()
        };
        let spec = Self {
            generator: DiagonalGenerator::new(mu)?,
            nonlinearity,
            nonlocal,
            cone: ConeSpec::new(self.cone.kind, self.cone.sigma_cone, modes, self.cone.pos_tol)?,
            ..self.clone()
        };
        spec.check_consistent()?;
        Ok(spec)
    }
}
