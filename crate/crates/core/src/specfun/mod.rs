//! Scalar special functions: Gamma, erfc, the two-parameter Mittag-Leffler
//! function on the nonpositive real axis, and the density `k_β`.

mod density;
mod erfc;
mod gamma;
mod mittag_leffler;

pub use density::{
    density_k, density_k_integral, density_laplace, density_moments, density_series,
    density_tau_max, density_weighted_integral, tail_bound, tail_cut, tail_kappa,
    DensityIntegral, DensityMoments, SeriesValue, DEFAULT_DENSITY_TERMS, SERIES_CERT_TOL,
};
pub use erfc::{erfc_fn, erfcx};
pub use gamma::{gamma_fn, ln_gamma};
pub use mittag_leffler::{
    asymptotic as ml_asymptotic, integral as ml_integral, integral_reduced as ml_integral_reduced,
    kummer as ml_kummer, ml, ml_eval, taylor as ml_taylor, MLEvalConfig, MlMethod, MlValue,
};

pub(crate) use gamma::gamma_pos;

use crate::error::{domain, Result};

/// Caputo order `β ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta < 1.0 {
            Ok(Self(beta))
        } else {
            Err(domain(format!("fractional order must lie in (0, 1), got {beta}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `Γ(β)`.
    pub fn gamma(self) -> f64 {
        gamma_pos(self.0)
    }
}

impl std::fmt::Display for FracOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `E_β(−x)`, the `S_β` multiplier.
pub fn ml_s(beta: FracOrder, x: f64, cfg: &MLEvalConfig) -> Result<f64> {
    ml(beta.get(), 1.0, -x, cfg)
}

/// `E_{β,β}(−x)`, the `T_β` multiplier.
pub fn ml_t(beta: FracOrder, x: f64, cfg: &MLEvalConfig) -> Result<f64> {
    ml(beta.get(), beta.get(), -x, cfg)
}
