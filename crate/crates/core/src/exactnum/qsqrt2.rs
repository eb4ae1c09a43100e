//! The quadratic field Q(sqrt 2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{Field, ParseError, Rational};

/// `a + b*sqrt(2)` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::ZERO, Rational::ONE)
    }

    pub fn conj(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from_int(2) * &(&self.b * &self.b))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl From<Rational> for QSqrt2 {
    fn from(a: Rational) -> Self {
        QSqrt2::new(a, Rational::ZERO)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        QSqrt2::from(Rational::from_int(n))
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        if self.b.is_zero() && o.b.is_zero() {
            return QSqrt2::from(&self.a * &o.a);
        }
        let two = Rational::from_int(2);
        let a = &(&self.a * &o.a) + &(&two * &(&self.b * &o.b));
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        QSqrt2::new(a, b)
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: QSqrt2) -> QSqrt2 {
        self * o.inverse().expect("division by zero in Q(sqrt2)")
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl AddAssign for QSqrt2 {
    fn add_assign(&mut self, o: QSqrt2) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign for QSqrt2 {
    fn sub_assign(&mut self, o: QSqrt2) {
        self.a -= o.a;
        self.b -= o.b;
    }
}

impl MulAssign for QSqrt2 {
    fn mul_assign(&mut self, o: QSqrt2) {
        *self = self.clone() * o;
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from(Rational::ONE)
    }
}

impl Field for QSqrt2 {
    fn from_rational(r: Rational) -> Self {
        QSqrt2::from(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        let inv = n.recip()?;
        Some(QSqrt2::new(&self.a * &inv, -(&self.b * &inv)))
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QSqrt2 {
    type Err = ParseError;

    /// Accepts `a`, `b*sqrt2`, `sqrt2` and `a + b*sqrt2`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        let parse_surd = |p: &str| -> Result<Rational, ParseError> {
            let p = p.trim();
            let coeff = p.strip_suffix("sqrt2").ok_or_else(|| ParseError(format!("invalid Q(sqrt2) term: {p:?}")))?;
            let coeff = coeff.trim().trim_end_matches('*').trim();
            match coeff {
                "" | "+" => Ok(Rational::ONE),
                "-" => Ok(-Rational::ONE),
                c => c.parse(),
            }
        };
        if !t.contains("sqrt2") {
            return Ok(QSqrt2::from(t.parse::<Rational>()?));
        }
        match t.split_once(" + ") {
            Some((a, b)) => Ok(QSqrt2::new(a.parse()?, parse_surd(b)?)),
            None => Ok(QSqrt2::new(Rational::ZERO, parse_surd(t)?)),
        }
    }
}

impl serde::Serialize for QSqrt2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QSqrt2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QSqrt2 {
        QSqrt2::new(Rational::from_int(a), Rational::from_int(b))
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        assert_eq!(QSqrt2::one() / q(1, 1), q(-1, 1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QSqrt2::sqrt2() * QSqrt2::sqrt2(), q(2, 0));
    }

    #[test]
    fn string_roundtrip() {
        let x = QSqrt2::new(Rational::new(-3, 4), Rational::new(5, 7));
        assert_eq!(x.to_string(), "-3/4 + 5/7*sqrt2");
        assert_eq!(x.to_string().parse::<QSqrt2>().unwrap(), x);
        assert_eq!("sqrt2".parse::<QSqrt2>().unwrap(), QSqrt2::sqrt2());
        assert_eq!("-1/2*sqrt2".parse::<QSqrt2>().unwrap(), QSqrt2::new(Rational::ZERO, Rational::new(-1, 2)));
        assert_eq!("2 + -1*sqrt2".parse::<QSqrt2>().unwrap(), q(2, -1));
    }
}
