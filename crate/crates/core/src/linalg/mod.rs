//! Dense exact linear algebra over a [`FieldCtx`](crate::gf::FieldCtx) and
//! Jordan types of nilpotent matrices.

mod jordan;
mod matrix;

pub use jordan::{jordan_type_nilpotent, power_ranks, Dominance, JordanType};
pub use matrix::{Echelon, MatF};
