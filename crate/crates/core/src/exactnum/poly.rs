//! Univariate polynomials over an exact field, and determinants of
//! polynomial matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational};

/// Dense coefficient vector, lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `s`.
    pub fn var() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// `s - r`.
    pub fn linear_root(r: F) -> Self {
        Poly::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().inverse().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= c.clone() * dc.clone();
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(F::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(F::zero);
                    let b = o.coeffs.get(i).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        self + &(-o)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*s"),
                _ => format!("({c})*s^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Determinant of a square matrix of polynomials, by fraction-free
/// elimination with exact polynomial division.
pub fn poly_det<F: Field>(m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(F::one());
    }
    let mut a: Vec<Vec<Poly<F>>> = m.to_vec();
    let mut prev = Poly::constant(F::one());
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Poly::zero() };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    if negate {
        -&prev
    } else {
        prev
    }
}

/// The monic-up-to-constant factorization of a rational polynomial into
/// linear factors: `lead * prod (s - r)^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplit {
    pub lead: Rational,
    pub roots: Vec<(Rational, usize)>,
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots with multiplicity, found by the rational root theorem.
/// Returns the split when the polynomial is a product of linear factors
/// over the rationals, and `None` otherwise or for the zero polynomial.
pub fn split_linear(p: &Poly<Rational>) -> Option<LinearSplit> {
    if p.is_zero() {
        return None;
    }
    let mut cur = p.clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push = |r: Rational, roots: &mut Vec<(Rational, usize)>| match roots.iter_mut().find(|(x, _)| *x == r) {
        Some(e) => e.1 += 1,
        None => roots.push((r, 1)),
    };
    while cur.degree().unwrap_or(0) > 0 && cur.coeffs()[0].is_zero() {
        cur = cur.exact_div(&Poly::var());
        push(Rational::ZERO, &mut roots);
    }
    while cur.degree().unwrap_or(0) > 0 {
        // integer-scaled copy
        let lcm = cur.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = cur.coeffs().iter().map(|c| (c.clone() * Rational::from(lcm.clone())).numer()).collect();
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let mut found = None;
        'search: for q in divisors(&an) {
            for pnum in divisors(&a0) {
                for sgn in [1, -1] {
                    let r = Rational::from_bigints(pnum.clone() * sgn, q.clone());
                    if cur.eval(&r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let r = found?;
        cur = cur.exact_div(&Poly::linear_root(r.clone()));
        push(r, &mut roots);
    }
    roots.sort();
    Some(LinearSplit { lead: cur.leading(), roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn division_and_eval() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(a.eval(&Rational::from_int(1)), Rational::ZERO);
    }

    #[test]
    fn det_two_by_two() {
        let m = vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(poly_det(&m), p(&[-1, 0, 1]));
    }

    #[test]
    fn split_detects_irreducible_quadratic() {
        assert!(split_linear(&p(&[1, 0, 1])).is_none());
        let s = split_linear(&p(&[6, -5, 1]).scale(&Rational::new(1, 2))).unwrap();
        assert_eq!(s.lead, Rational::new(1, 2));
        assert_eq!(s.roots, vec![(Rational::from_int(2), 1), (Rational::from_int(3), 1)]);
    }
}
