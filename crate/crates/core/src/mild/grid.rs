use crate::error::{domain, Result};

/// Grid family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    Uniform,
    /// `t_j = (j/N)^γ`, clustering nodes near `t = 0`.
    Graded { gamma: f64 },
}

/// Time grid `0 = t_0 < … < t_N = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    nodes: Vec<f64>,
    kind: GridKind,
}

impl TimeGrid {
    pub fn uniform(steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(domain("a time grid needs at least one step"));
        }
        let n = steps as f64;
        let mut nodes: Vec<f64> = (0..=steps).map(|j| j as f64 / n).collect();
        nodes[steps] = 1.0;
        Ok(Self {
            nodes,
            kind: GridKind::Uniform,
        })
    }

    pub fn graded(steps: usize, gamma: f64) -> Result<Self> {
        if steps == 0 {
            return Err(domain("a time grid needs at least one step"));
        }
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return Err(domain(format!("grading exponent must be finite and >= 1, got {gamma}")));
        }
        if gamma == 1.0 {
            return Self::uniform(steps);
        }
        let n = steps as f64;
        let mut nodes: Vec<f64> = (0..=steps).map(|j| (j as f64 / n).powf(gamma)).collect();
        nodes[steps] = 1.0;
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("graded grid is not strictly increasing in floating point"));
        }
        Ok(Self {
            nodes,
            kind: GridKind::Graded { gamma },
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Number of nodes, `N + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of steps `N`.
    pub fn steps(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.kind, GridKind::Uniform)
    }

    /// Uniform step `1/N`, if the grid is uniform.
    pub fn uniform_step(&self) -> Option<f64> {
        self.is_uniform().then(|| 1.0 / self.steps() as f64)
    }

    /// Index of the node equal to `t` up to `1e−12`.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.nodes.iter().position(|s| (s - t).abs() <= 1e-12)
    }

    /// Trapezoid weights `q_n` with `Σ q_n g(t_n) ≈ ∫_0^1 g`.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let n = self.steps();
        let mut q = vec![0.0; n + 1];
        for j in 0..n {
            let h = self.nodes[j + 1] - self.nodes[j];
            q[j] += 0.5 * h;
            q[j + 1] += 0.5 * h;
        }
        q
    }
}
