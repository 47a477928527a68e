use std::f64::consts::PI;

/// Scalar coefficient functions of time on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeFn {
    Const(f64),
    /// `amp · e^{−rate·t}`
    Exp { amp: f64, rate: f64 },
    /// `amp · cos²(freq·π·t)`
    CosSq { amp: f64, freq: f64 },
    /// `offset + slope·t`
    Affine { offset: f64, slope: f64 },
}

impl TimeFn {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TimeFn::Const(c) => c,
            TimeFn::Exp { amp, rate } => amp * (-rate * t).exp(),
            TimeFn::CosSq { amp, freq } => amp * (freq * PI * t).cos().powi(2),
            TimeFn::Affine { offset, slope } => offset + slope * t,
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: f64) -> Self {
        match *self {
            TimeFn::Const(v) => TimeFn::Const(c * v),
            TimeFn::Exp { amp, rate } => TimeFn::Exp { amp: c * amp, rate },
            TimeFn::CosSq { amp, freq } => TimeFn::CosSq { amp: c * amp, freq },
            TimeFn::Affine { offset, slope } => TimeFn::Affine {
                offset: c * offset,
                slope: c * slope,
            },
        }
    }

    /// `∫_0^1 |f(t)| dt` in closed form.
    pub fn l1_norm(&self) -> f64 {
        match *self {
            TimeFn::Const(c) => c.abs(),
            TimeFn::Exp { amp, rate } => {
                if rate == 0.0 {
                    amp.abs()
                } else {
                    amp.abs() * -(-rate).exp_m1() / rate
                }
            }
            TimeFn::CosSq { amp, freq } => {
                if freq == 0.0 {
                    amp.abs()
                } else {
                    amp.abs() * (0.5 + (2.0 * PI * freq).sin() / (4.0 * PI * freq))
                }
            }
            TimeFn::Affine { offset, slope } => {
                let end = offset + slope;
                if offset * end >= 0.0 {
                    (offset + 0.5 * slope).abs()
                } else {
                    let r = -offset / slope;
                    0.5 * (offset.abs() * r + end.abs() * (1.0 - r))
                }
            }
        }
    }

    /// `sup_{[0,1]} |f|` in closed form.
    pub fn sup_norm(&self) -> f64 {
        match *self {
            TimeFn::Const(c) => c.abs(),
            TimeFn::Exp { amp, rate } => amp.abs() * (-rate.min(0.0)).exp(),
            TimeFn::CosSq { amp, .. } => amp.abs(),
            TimeFn::Affine { offset, slope } => offset.abs().max((offset + slope).abs()),
        }
    }

    /// `inf_{[0,1]} f` in closed form.
    pub fn inf(&self) -> f64 {
        match *self {
            TimeFn::Const(c) => c,
            TimeFn::Exp { amp, rate } => amp.min(amp * (-rate).exp()),
            TimeFn::CosSq { amp, freq } => {
                // cos² reaches 0 on [0, 1] once |freq| ≥ 1/2.
                let lo = if freq.abs() >= 0.5 { 0.0 } else { (freq * PI).cos().powi(2) };
                if amp >= 0.0 {
                    amp * lo
                } else {
                    amp
                }
            }
            TimeFn::Affine { offset, slope } => offset.min(offset + slope),
        }
    }

    /// Minimum over a set of nodes.
    pub fn min_on(&self, nodes: &[f64]) -> f64 {
        nodes.iter().map(|&t| self.eval(t)).fold(f64::INFINITY, f64::min)
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            TimeFn::Const(c) => c.is_finite(),
            TimeFn::Exp { amp, rate } => amp.is_finite() && rate.is_finite(),
            TimeFn::CosSq { amp, freq } => amp.is_finite() && freq.is_finite(),
            TimeFn::Affine { offset, slope } => offset.is_finite() && slope.is_finite(),
        }
    }
}

impl std::fmt::Display for TimeFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            TimeFn::Const(c) => write!(f, "const:{c}"),
            TimeFn::Exp { amp, rate } => write!(f, "exp:{rate}:{amp}"),
            TimeFn::CosSq { amp, freq } => write!(f, "cos2:{freq}:{amp}"),
            TimeFn::Affine { offset, slope } => write!(f, "affine:{offset}:{slope}"),
        }
    }
}
