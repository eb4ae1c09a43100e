//! Exact scalars, dense and sparse linear algebra, and polynomials.

mod field;
mod matrix;
mod poly;
mod qsqrt2;
mod rational;
pub mod sparse;

pub use field::Field;
pub use matrix::Matrix;
pub use poly::{poly_det, split_linear, LinearSplit, Poly};
pub use qsqrt2::QSqrt2;
pub use rational::{binomial, factorial, Rational};
pub use sparse::{Echelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);
