//! Complementary error function.

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_560_772_586;
const SERIES_LIMIT: f64 = 2.0;

/// `e^{−x²}` with the rounding error of `x²` compensated.
fn exp_neg_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (1.0 - lo)
}

/// `erf(x)` for `0 ≤ x < 2` from the all-positive series
/// `(2/√π) e^{−x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * exp_neg_sq(x) * sum
}

/// `e^{x²} erfc(x)` for `x ≥ 2` by the Lentz continued fraction
/// `1/(√π (x + (1/2)/(x + 1/(x + (3/2)/(x + …)))))`.
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..5000 {
        let a = 0.5 * k as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}

/// Complementary error function `erfc(x) = 1 − erf(x)`.
///
/// ```
/// use mild_eigen::specfun::erfc_fn;
/// assert!((erfc_fn(1.0) - 0.157_299_207_050_285_13).abs() < 1e-14);
/// assert_eq!(erfc_fn(0.0), 1.0);
/// ```
pub fn erfc_fn(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc_fn(-x);
    }
    if x < SERIES_LIMIT {
        1.0 - erf_series(x)
    } else if x > 27.3 {
        0.0
    } else {
        exp_neg_sq(x) * erfcx_cf(x)
    }
}

/// Scaled complementary error function `e^{x²} erfc(x)` for `x ≥ 0`.
///
/// Returns NaN for negative or NaN input.
pub fn erfcx(x: f64) -> f64 {
    if !(x >= 0.0) {
        return f64::NAN;
    }
    if x < SERIES_LIMIT {
        (x * x).exp() * (1.0 - erf_series(x))
    } else if x.is_infinite() {
        0.0
    } else {
        erfcx_cf(x)
    }
}
