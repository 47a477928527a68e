use crate::error::{data, Result};
use std::f64::consts::PI;

/// A function on `(0, π)` stored by its coefficients in the orthonormal
/// Dirichlet modes `ê_n(x) = √(2/π) sin(nx)`, `n = 1..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    coeffs: Vec<f64>,
}

impl SpectralField {
    /// Wraps coefficients; rejects empty or non-finite input.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(data("a spectral field needs at least one mode"));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(data(format!("coefficient {} is not finite", i + 1)));
        }
        Ok(Self { coeffs })
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(modes: usize) -> Self {
        assert!(modes >= 1, "a spectral field needs at least one mode");
        Self {
            coeffs: vec![0.0; modes],
        }
    }

    /// `amp · ê_n` (1-based `n`).
    pub fn mode(modes: usize, n: usize, amp: f64) -> Self {
        assert!(n >= 1 && n <= modes, "mode index {n} outside 1..={modes}");
        let mut f = Self::zeros(modes);
        f.coeffs[n - 1] = amp;
        f
    }

    /// The normalized first eigenfunction `ê_1`.
    pub fn e1(modes: usize) -> Self {
        Self::mode(modes, 1, 1.0)
    }

    /// The unnormalized profile `amp · sin(nx)`, i.e. `amp √(π/2) ê_n`.
    pub fn sine(modes: usize, n: usize, amp: f64) -> Self {
        Self::mode(modes, n, amp * (0.5 * PI).sqrt())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }

    /// Euclidean norm of the coefficients (the `L²(0, π)` norm).
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.check_len(other);
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| c * v).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        self.check_len(other);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(1.0, other, -1.0)
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.check_len(other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Multiplies coefficient `n` by `mult[n]`.
    pub fn multiply(&self, mult: &[f64]) -> Self {
        assert_eq!(mult.len(), self.len(), "multiplier length mismatch");
        Self {
            coeffs: self.coeffs.iter().zip(mult).map(|(c, m)| c * m).collect(),
        }
    }

    fn check_len(&self, other: &Self) {
        assert_eq!(self.len(), other.len(), "spectral fields differ in mode count");
    }
}
