//! Problem assembly: nonlinearities `F`, nonlocal functionals `H`, the
//! fractional heat instance, and the audit of the existence hypotheses.

mod audit;
mod nonlinearity;
mod nonlocal;
mod sampling;
mod spec;
mod timefn;

pub use audit::{audit, AuditReport, HypothesisFlags};
pub use nonlinearity::{eval_f, CustomMap, NodalFn, NonlinearityKind, NonlinearitySpec, PreparedNonlinearity};
pub use nonlocal::{eval_h, NonlocalSpec};
pub use sampling::{sample_ball, sample_boundary, sample_rng};
pub use spec::{LambdaMode, ProblemSpec, DEFAULT_AUDIT_FLOOR, DEFAULT_POS_TOL};
pub use timefn::TimeFn;
