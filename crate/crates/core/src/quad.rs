//! Adaptive Gauss–Kronrod (7, 15) quadrature and a fixed 10-point
//! Gauss–Legendre rule.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const GL10_X: [f64; 5] = [
    0.148_874_338_981_631_210_884_826_0,
    0.433_395_394_129_247_190_799_265_9,
    0.679_409_568_299_024_406_234_327_4,
    0.865_063_366_688_984_510_732_096_7,
    0.973_906_528_517_171_720_077_964_0,
];

const GL10_W: [f64; 5] = [
    0.295_524_224_714_752_870_173_893_0,
    0.269_266_719_309_996_355_091_226_9,
    0.219_086_362_515_982_043_995_534_9,
    0.149_451_349_150_580_593_145_776_3,
    0.066_671_344_308_688_137_593_568_8,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 400,
        }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = kron.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kron += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kron * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((kron - gauss) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, err }
}

/// Integrates `f` over `[a, b]` by globally adaptive bisection.
///
/// Fails with [`Error::Accuracy`] when the error estimate does not reach
/// `max(abs_tol, rel_tol·|I|)` within `max_intervals` subintervals or when
/// the integrand produces a non-finite value.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_err: 0.0,
            evaluations: 0,
        });
    }
    let mut segs = vec![gk15(&mut f, a, b)];
    let mut evaluations = 15;
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        if !value.is_finite() || !err.is_finite() {
            return Err(Error::Accuracy {
                context: "quadrature (non-finite integrand)".into(),
                requested: cfg.rel_tol,
                achieved: f64::INFINITY,
            });
        }
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if err <= target {
            return Ok(QuadResult {
                value,
                abs_err: err,
                evaluations,
            });
        }
        if segs.len() >= cfg.max_intervals {
            return Err(Error::Accuracy {
                context: "adaptive quadrature".into(),
                requested: cfg.rel_tol,
                achieved: if value != 0.0 { err / value.abs() } else { err },
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, s)| {
                if s.err > acc.1 {
                    (i, s.err)
                } else {
                    acc
                }
            });
        let s = segs.swap_remove(worst);
        let m = 0.5 * (s.a + s.b);
        if m <= s.a.min(s.b) || m >= s.a.max(s.b) {
            return Err(Error::Accuracy {
                context: "adaptive quadrature (interval underflow)".into(),
                requested: cfg.rel_tol,
                achieved: if value != 0.0 { err / value.abs() } else { err },
            });
        }
        segs.push(gk15(&mut f, s.a, m));
        segs.push(gk15(&mut f, m, s.b));
        evaluations += 30;
    }
}

/// Ten-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre10<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for k in 0..5 {
        let dx = h * GL10_X[k];
        s += GL10_W[k] * (f(c - dx) + f(c + dx));
    }
    s * h
}

/// Nodes and weights of the ten-point Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre10_nodes(a: f64, b: f64) -> [(f64, f64); 10] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [(0.0, 0.0); 10];
    for k in 0..5 {
        let dx = h * GL10_X[k];
        out[2 * k] = (c - dx, GL10_W[k] * h);
        out[2 * k + 1] = (c + dx, GL10_W[k] * h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, &QuadConfig::default()).unwrap();
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
        let g = gauss_legendre10(|x| x.powi(19), 0.0, 1.0);
        assert!((g - 0.05).abs() < 1e-15);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let r = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &QuadConfig::new(0.0, 1e-10)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_tail() {
        let r = integrate(|x: f64| (-x * x).exp(), 0.0, 10.0, &QuadConfig::default()).unwrap();
        assert!((r.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_change_sign() {
        let r = integrate(|x: f64| x.cos(), 1.0, 0.0, &QuadConfig::default()).unwrap();
        assert!((r.value + 1f64.sin()).abs() < 1e-14);
    }
}
