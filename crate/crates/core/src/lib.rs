pub mod balg;
pub mod combin;
pub mod check;
pub mod exactnum;
pub mod liealg;
pub mod repth;
pub mod rootdata;
pub mod uea;

pub use exactnum::{Field, QSqrt2, Rational};

/// The coefficient field of the F4 model.
pub type Scalar = QSqrt2;
/// Dense matrices over [`Scalar`].
pub type ScalarMatrix = exactnum::Matrix<Scalar>;
/// Polynomials in one indeterminate over [`Scalar`].
pub type PolyScalar = exactnum::Poly<Scalar>;
