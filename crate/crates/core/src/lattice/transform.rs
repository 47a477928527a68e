use super::SpectralField;
use crate::error::{data, domain, Error, Result};
use std::f64::consts::PI;

/// Sine synthesis and analysis between `M` coefficients and the interior
/// nodes `x_i = iπ/X`, `i = 1..X−1`.
///
/// Analysis uses the discrete orthogonality
/// `Σ_i sin(n x_i) sin(m x_i) = (X/2) δ_{nm}` for `1 ≤ n, m ≤ X−1`, so
/// `from_nodal ∘ to_nodal` is the identity, and `to_nodal ∘ from_nodal` is
/// the identity as well when `X = M + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineTransform {
    modes: usize,
    points: usize,
    // table[i * modes + (n − 1)] = sin(n x_{i+1})
    table: Vec<f64>,
}

impl SineTransform {
    pub fn new(modes: usize, points: usize) -> Result<Self> {
        if modes == 0 {
            return Err(domain("a sine transform needs at least one mode"));
        }
        if points < modes + 1 {
            return Err(Error::Aliasing {
                modes,
                points,
                needed: modes + 1,
            });
        }
        let mut table = Vec::with_capacity((points - 1) * modes);
        for i in 1..points {
            for n in 1..=modes {
                // Reduce n·i modulo 2X so the sine argument stays in [0, 2π).
                let k = (n * i) % (2 * points);
                table.push((PI * k as f64 / points as f64).sin());
            }
        }
        Ok(Self {
            modes,
            points,
            table,
        })
    }

    /// The square transform `X = M + 1`.
    pub fn square(modes: usize) -> Result<Self> {
        Self::new(modes, modes + 1)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// `X`; there are `X − 1` interior nodes.
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..self.points)
            .map(|i| PI * i as f64 / self.points as f64)
            .collect()
    }

    /// Nodal values of `f`.
    pub fn to_nodal(&self, f: &SpectralField) -> Vec<f64> {
        assert_eq!(f.len(), self.modes, "field has {} modes, transform {}", f.len(), self.modes);
        let norm = (2.0 / PI).sqrt();
        let c = f.coeffs();
        self.table
            .chunks_exact(self.modes)
            .map(|row| norm * row.iter().zip(c).map(|(s, a)| s * a).sum::<f64>())
            .collect()
    }

    /// Coefficients `c_n = (√(2π)/X) Σ_i f_i sin(n x_i)`.
    pub fn from_nodal(&self, values: &[f64]) -> Result<SpectralField> {
        if values.len() != self.points - 1 {
            return Err(data(format!(
                "expected {} nodal values, got {}",
                self.points - 1,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(data("nodal values must be finite"));
        }
        let scale = (2.0 * PI).sqrt() / self.points as f64;
        let mut out = vec![0.0; self.modes];
        for (row, v) in self.table.chunks_exact(self.modes).zip(values) {
            for (o, s) in out.iter_mut().zip(row) {
                *o += v * s;
            }
        }
        for o in &mut out {
            *o *= scale;
        }
        Ok(SpectralField::from_vec_unchecked(out))
    }

    /// Nodal values of `ê_1`.
    pub fn e1_nodal(&self) -> Vec<f64> {
        self.to_nodal(&SpectralField::e1(self.modes))
    }
}

/// Nodal values of `f` on `x_i = iπ/X`, `i = 1..X−1`.
///
/// ```
/// use mild_eigen::lattice::{to_nodal, SpectralField};
/// let v = to_nodal(&SpectralField::e1(1), 4).unwrap();
/// let s = (2.0 / std::f64::consts::PI).sqrt();
/// assert!((v[1] - s).abs() < 1e-15);
/// ```
pub fn to_nodal(f: &SpectralField, points: usize) -> Result<Vec<f64>> {
    Ok(SineTransform::new(f.len(), points)?.to_nodal(f))
}

/// Coefficients of the first `modes` sine modes of nodal data on `X = len + 1`.
pub fn from_nodal(values: &[f64], modes: usize) -> Result<SpectralField> {
    SineTransform::new(modes, values.len() + 1)?.from_nodal(values)
}

/// Norms of a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldNorms {
    /// Coefficient (Parseval) norm.
    pub l2: f64,
    /// `(∫|f|^p)^{1/p}` by the trapezoid rule on the nodal grid.
    pub lp_nodal: f64,
    pub sup_nodal: f64,
    pub min_nodal: f64,
}

/// Coefficient norm plus nodal `L^p`, sup and min on `X` points.
pub fn norms(f: &SpectralField, points: usize, p: f64) -> Result<FieldNorms> {
    if !(p >= 2.0) || !p.is_finite() {
        return Err(domain(format!("nodal L^p norm requires p in [2, inf), got {p}")));
    }
    let v = to_nodal(f, points)?;
    let h = PI / points as f64;
    // Endpoint values vanish, so the trapezoid rule is a plain sum.
    let lp = (h * v.iter().map(|x| x.abs().powf(p)).sum::<f64>()).powf(1.0 / p);
    Ok(FieldNorms {
        l2: f.l2_norm(),
        lp_nodal: lp,
        sup_nodal: v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
        min_nodal: v.iter().fold(f64::INFINITY, |m, &x| m.min(x)),
    })
}
