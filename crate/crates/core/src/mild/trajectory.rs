use super::TimeGrid;
use crate::error::{data, Result};
use crate::lattice::SpectralField;
use std::sync::Arc;

/// One spectral field per time node; realizes `u ∈ C([0, 1]; V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: Arc<TimeGrid>,
    values: Vec<SpectralField>,
}

impl Trajectory {
    pub fn new(grid: Arc<TimeGrid>, values: Vec<SpectralField>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(data(format!(
                "trajectory has {} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        let m = values[0].len();
        if values.iter().any(|v| v.len() != m) {
            return Err(data("trajectory values differ in mode count"));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Arc<TimeGrid>, f: &SpectralField) -> Self {
        let values = vec![f.clone(); grid.len()];
        Self { grid, values }
    }

    pub fn zeros(grid: Arc<TimeGrid>, modes: usize) -> Self {
        Self::constant(grid, &SpectralField::zeros(modes))
    }

    /// Builds `u(t_n) = f(n, t_n)`.
    pub fn from_fn(grid: Arc<TimeGrid>, mut f: impl FnMut(usize, f64) -> SpectralField) -> Result<Self> {
        let values = grid.nodes().iter().enumerate().map(|(n, &t)| f(n, t)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Arc<TimeGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[SpectralField] {
        &self.values
    }

    pub fn at(&self, n: usize) -> &SpectralField {
        &self.values[n]
    }

    pub fn last(&self) -> &SpectralField {
        self.values.last().expect("trajectories are never empty")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn modes(&self) -> usize {
        self.values[0].len()
    }

    /// `max_n ‖u(t_n)‖`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.l2_norm()).fold(0.0, f64::max)
    }

    /// `max_n ‖u(t_n) − v(t_n)‖`.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.check(other);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        self.check(other);
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x.combine(a, y, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(1.0, other, -1.0)
    }

    /// Linear interpolation in time.
    pub fn interpolate(&self, t: f64) -> Result<SpectralField> {
        let nodes = self.grid.nodes();
        if !(t >= 0.0 && t <= 1.0) {
            return Err(crate::error::domain(format!("time {t} outside [0, 1]")));
        }
        if let Some(n) = self.grid.index_of(t) {
            return Ok(self.values[n].clone());
        }
        let j = nodes.partition_point(|s| *s <= t) - 1;
        let w = (t - nodes[j]) / (nodes[j + 1] - nodes[j]);
        Ok(self.values[j].combine(1.0 - w, &self.values[j + 1], w))
    }

    pub(crate) fn same_grid(&self, other: &TimeGrid) -> bool {
        Arc::as_ptr(&self.grid) == other as *const TimeGrid || *self.grid == *other
    }

    fn check(&self, other: &Self) {
        assert!(self.same_grid(&other.grid), "trajectories live on different grids");
        assert_eq!(self.modes(), other.modes(), "trajectories differ in mode count");
    }
}
