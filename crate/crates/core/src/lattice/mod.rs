//! `V = L²(0, π)` in the Dirichlet sine basis: fields, the sine transform,
//! the heat semigroup, the families `S_β` and `T_β`, and cone checks.

mod cone;
mod field;
mod generator;
mod transform;

pub use cone::{cone_check, ConeKind, ConeReport, ConeSpec};
pub use field::SpectralField;
pub use generator::{
    sbeta_apply, sbeta_apply_with, sbeta_multipliers, semigroup_apply, tbeta_apply,
    tbeta_apply_with, tbeta_multipliers, DiagonalGenerator,
};
pub use transform::{from_nodal, norms, to_nodal, FieldNorms, SineTransform};
