use super::SpectralField;
use crate::error::{data, domain, Result};
use crate::specfun::{ml, FracOrder, MLEvalConfig};

/// Diagonal generator: `−𝒜 ê_n = μ_n ê_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalGenerator {
    mu: Vec<f64>,
}

impl DiagonalGenerator {
    /// Requires finite, strictly increasing `μ` with `μ_1 ≥ 0`; a zero first
    /// mode is allowed here (identity semigroup) and rejected by
    /// [`ProblemSpec`](crate::problem::ProblemSpec) validation.
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(domain("generator needs at least one mode"));
        }
        if mu.iter().any(|m| !m.is_finite()) {
            return Err(domain("generator eigenvalues must be finite"));
        }
        if mu[0] < 0.0 {
            return Err(domain(format!("mu_1 must be >= 0, got {}", mu[0])));
        }
        if mu.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("generator eigenvalues must be strictly increasing"));
        }
        Ok(Self { mu })
    }

    /// Dirichlet Laplacian on `(0, π)`: `μ_n = n²`.
    pub fn dirichlet_laplacian(modes: usize) -> Self {
        assert!(modes >= 1);
        Self {
            mu: (1..=modes).map(|n| (n * n) as f64).collect(),
        }
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    fn check(&self, f: &SpectralField) -> Result<()> {
        if f.len() != self.len() {
            return Err(data(format!(
                "field has {} modes but the generator has {}",
                f.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

fn check_time(t: f64, what: &str) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain(format!("{what} requires a finite time >= 0, got {t}")));
    }
    Ok(())
}

/// Heat semigroup `T(s)`: multiplies mode `n` by `e^{−μ_n s}`.
pub fn semigroup_apply(g: &DiagonalGenerator, s: f64, f: &SpectralField) -> Result<SpectralField> {
    check_time(s, "semigroup_apply")?;
    g.check(f)?;
    if s == 0.0 {
        return Ok(f.clone());
    }
    let mult: Vec<f64> = g.mu.iter().map(|m| (-m * s).exp()).collect();
    Ok(f.multiply(&mult))
}

/// `E_β(−μ_n t^β)` for every mode.
pub fn sbeta_multipliers(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    cfg: &MLEvalConfig,
) -> Result<Vec<f64>> {
    check_time(t, "S_beta")?;
    let tb = t.powf(beta.get());
    g.mu.iter().map(|m| ml(beta.get(), 1.0, -m * tb, cfg)).collect()
}

/// `E_{β,β}(−μ_n t^β)` for every mode.
pub fn tbeta_multipliers(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    cfg: &MLEvalConfig,
) -> Result<Vec<f64>> {
    check_time(t, "T_beta")?;
    let tb = t.powf(beta.get());
    g.mu.iter()
        .map(|m| ml(beta.get(), beta.get(), -m * tb, cfg))
        .collect()
}

/// `S_β(t) f`; `S_β(0)` is the identity exactly.
pub fn sbeta_apply(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    f: &SpectralField,
) -> Result<SpectralField> {
    sbeta_apply_with(g, beta, t, f, &MLEvalConfig::default())
}

pub fn sbeta_apply_with(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    f: &SpectralField,
    cfg: &MLEvalConfig,
) -> Result<SpectralField> {
    g.check(f)?;
    check_time(t, "S_beta")?;
    if t == 0.0 {
        return Ok(f.clone());
    }
    Ok(f.multiply(&sbeta_multipliers(g, beta, t, cfg)?))
}

/// `T_β(t) f`; `T_β(0) = I/Γ(β)`.
pub fn tbeta_apply(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    f: &SpectralField,
) -> Result<SpectralField> {
    tbeta_apply_with(g, beta, t, f, &MLEvalConfig::default())
}

pub fn tbeta_apply_with(
    g: &DiagonalGenerator,
    beta: FracOrder,
    t: f64,
    f: &SpectralField,
    cfg: &MLEvalConfig,
) -> Result<SpectralField> {
    g.check(f)?;
    Ok(f.multiply(&tbeta_multipliers(g, beta, t, cfg)?))
}
