//! Gamma function on the positive reals (Lanczos, g = 607/128).

use crate::error::{domain, Result};

const LANCZOS_SHIFT: f64 = 671.0 / 128.0;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

const COF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

fn lanczos_series(x: f64) -> f64 {
    let mut ser = 0.999_999_999_999_997_092;
    for (j, c) in COF.iter().enumerate() {
        ser += c / (x + (j + 1) as f64);
    }
    ser
}

/// `Γ(x)` for `x > 0`; overflows to `+∞` beyond `x ≈ 171.6`.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > 171.7 {
        return f64::INFINITY;
    }
    let tmp = x + LANCZOS_SHIFT;
    let scale = SQRT_2PI * lanczos_series(x) / x;
    if x < 140.0 {
        tmp.powf(x + 0.5) * (-tmp).exp() * scale
    } else {
        let half = tmp.powf(0.5 * (x + 0.5));
        half * ((-tmp).exp() * half) * scale
    }
}

/// `ln Γ(x)` for `x > 0`, accurate in absolute terms.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let tmp = x + LANCZOS_SHIFT;
    (x + 0.5) * tmp.ln() - tmp + (SQRT_2PI * lanczos_series(x) / x).ln()
}

/// `1/Γ(x)` on the whole real line: zero at the poles `0, −1, −2, …`.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        if x > 171.0 {
            return (-ln_gamma_pos(x)).exp();
        }
        return 1.0 / gamma_pos(x);
    }
    if x == x.floor() {
        return 0.0;
    }
    // 1/Γ(x) = x (x+1) ⋯ (x+n−1) / Γ(x+n), with x+n ∈ (0, 1].
    let n = (-x).floor() as usize + 1;
    let mut prod = 1.0;
    for k in 0..n {
        prod *= x + k as f64;
    }
    prod / gamma_pos(x + n as f64)
}

/// Gamma function `Γ(x)` for finite `x > 0`.
///
/// ```
/// use mild_eigen::specfun::gamma_fn;
/// assert!((gamma_fn(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
/// assert!(gamma_fn(-1.0).is_err());
/// ```
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("gamma_fn requires a finite x > 0, got {x}")));
    }
    Ok(gamma_pos(x))
}

/// `ln Γ(x)` for finite `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("ln_gamma requires a finite x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}
