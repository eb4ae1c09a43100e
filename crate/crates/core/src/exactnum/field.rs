use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Rational;

/// An exact field of characteristic zero. All generic linear algebra, Lie
/// algebra and enveloping-algebra code is written against this trait.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    /// The value as a rational, if it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn inverse(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n, d))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self.clone();
        }
        acc
    }
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }
}
