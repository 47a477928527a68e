use super::{Trajectory, VolterraOperator};
use crate::error::{data, Result};
use crate::lattice::{sbeta_multipliers, SineTransform, SpectralField};
use crate::problem::{PreparedNonlinearity, ProblemSpec};
use rayon::prelude::*;

/// `𝒯u = S_β(·) H[u] + 𝒢 F(·, u)` with all data precomputed.
#[derive(Debug, Clone)]
pub struct SolutionOperator {
    problem: ProblemSpec,
    transform: SineTransform,
    nonlinearity: PreparedNonlinearity,
    /// `E_β(−μ_m t_n^β)` per node; node 0 is unused (`S_β(0) = I`).
    s_mult: Vec<Vec<f64>>,
    volterra: VolterraOperator,
}

/// The two summands of `𝒯u`.
#[derive(Debug, Clone)]
pub struct OperatorParts {
    /// `H[u]`.
    pub initial: SpectralField,
    /// `S_β(t) H[u]`.
    pub free: Trajectory,
    /// `𝒢 F(·, u)`.
    pub volterra: Trajectory,
}

impl SolutionOperator {
    pub fn new(problem: &ProblemSpec) -> Result<Self> {
        problem.check_consistent()?;
        let transform = SineTransform::new(problem.modes(), problem.nodal_points())?;
        let nonlinearity = problem.nonlinearity.prepare(&transform);
        let s_mult = problem
            .grid
            .nodes()
            .par_iter()
            .map(|&t| {
                if t == 0.0 {
                    Ok(Vec::new())
                } else {
                    sbeta_multipliers(&problem.generator, problem.beta, t, &problem.ml_cfg)
                }
            })
            .collect::<Result<_>>()?;
        let volterra = VolterraOperator::new(
            &problem.generator,
            problem.beta,
            problem.grid.clone(),
            problem.kernel_rule,
            &problem.ml_cfg,
        )?;
        Ok(Self {
            problem: problem.clone(),
            transform,
            nonlinearity,
            s_mult,
            volterra,
        })
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn volterra(&self) -> &VolterraOperator {
        &self.volterra
    }

    pub fn transform(&self) -> &SineTransform {
        &self.transform
    }

    fn check(&self, u: &Trajectory) -> Result<()> {
        if !u.same_grid(&self.problem.grid) {
            return Err(data("trajectory is not on the problem grid"));
        }
        if u.modes() != self.problem.modes() {
            return Err(data(format!(
                "trajectory has {} modes, problem {}",
                u.modes(),
                self.problem.modes()
            )));
        }
        Ok(())
    }

    /// `F(t_n, u(t_n))` at every node.
    pub fn forcing(&self, u: &Trajectory) -> Result<Trajectory> {
        self.check(u)?;
        let nodes = self.problem.grid.nodes();
        let values = u
            .values()
            .par_iter()
            .zip(nodes.par_iter())
            .map(|(f, &t)| self.nonlinearity.eval(t, f, &self.transform))
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(u.grid().clone(), values)
    }

    /// `S_β(t_n) h` at every node; node 0 is `h` itself.
    pub fn free_evolution(&self, h: &SpectralField) -> Result<Trajectory> {
        if h.len() != self.problem.modes() {
            return Err(data("initial field has the wrong mode count"));
        }
        let values = self
            .s_mult
            .iter()
            .enumerate()
            .map(|(n, m)| if n == 0 { h.clone() } else { h.multiply(m) })
            .collect();
        Trajectory::new(self.problem.grid.clone(), values)
    }

    /// `𝒢 f` for a given forcing trajectory.
    pub fn volterra_part(&self, forcing: &Trajectory) -> Result<Trajectory> {
        self.volterra.apply(forcing)
    }

    pub fn parts(&self, u: &Trajectory) -> Result<OperatorParts> {
        self.check(u)?;
        let initial = self.problem.nonlocal.eval(u)?;
        let free = self.free_evolution(&initial)?;
        let volterra = self.volterra.apply(&self.forcing(u)?)?;
        Ok(OperatorParts {
            initial,
            free,
            volterra,
        })
    }

    /// `𝒯u`; node 0 equals `H[u]` exactly.
    pub fn apply(&self, u: &Trajectory) -> Result<Trajectory> {
        let p = self.parts(u)?;
        let mut values = Vec::with_capacity(u.len());
        values.push(p.initial.clone());
        for n in 1..u.len() {
            values.push(p.free.at(n).add(p.volterra.at(n)));
        }
        Trajectory::new(u.grid().clone(), values)
    }
}

/// `𝒯u` built from scratch; prefer [`SolutionOperator`] for repeated use.
pub fn solution_operator(problem: &ProblemSpec, u: &Trajectory) -> Result<Trajectory> {
    SolutionOperator::new(problem)?.apply(u)
}
