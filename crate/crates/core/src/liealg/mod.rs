//! Lie algebras by structure constants, Chevalley bases, and the explicit
//! model of F4 adapted to its Iwasawa decomposition and compact Cartan
//! subalgebra.

mod algebra;
mod chevalley;
pub mod model;
pub mod spaces;
pub mod battery;

pub use algebra::{add_vec, form, is_zero_vec, lin_comb, ratio, scale_vec, sub_vec, unit, LieAlgebra, LieError};
pub use chevalley::Chevalley;
pub use model::{F4Model, KLabel};
