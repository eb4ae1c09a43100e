use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, Poly, Rational};
use crate::uea::{Pbw, Uea};

type Q = Rational;

/// Which basis of `C[x]` the coefficients of a [`PolyUea`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XBasis {
    Monomial,
    Phi,
}

/// `sum_j c_j p_j(x)` with `c_j` in `U(k)` and `p_j` either `x^j` or `phi_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyUea {
    pub coeffs: Vec<Uea>,
    pub basis: XBasis,
}

/// `phi_0 = 1`, `phi_n = x (x + n/2 - 1)(x + n/2 - 2) ... (x - n/2 + 1) / n!`.
pub fn phi(n: usize) -> Poly<Q> {
    let mut p = Poly::constant(Q::one());
    if n == 0 {
        return p;
    }
    p = &p * &Poly::var();
    let half = Q::new(n as i64, 2);
    for k in 1..n {
        let root = &Q::from_int(k as i64) - &half;
        p = &p * &Poly::linear_root(root);
    }
    p.scale(&factorial(n as u64).recip().unwrap())
}

/// `p(x + a)`.
pub fn shift(p: &Poly<Q>, a: &Q) -> Poly<Q> {
    let c = p.coeffs();
    let mut out = vec![Q::zero(); c.len()];
    for (k, ck) in c.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate().take(k + 1) {
            *o += &(&(ck * &binomial(k as i64, i as i64)) * &a.pow((k - i) as u32));
        }
    }
    Poly::new(out)
}

/// `p^{(n)}(x) = sum_j (-1)^j C(n,j) p(x + n/2 - j)`.
pub fn discrete_derivative_scalar(p: &Poly<Q>, n: usize) -> Poly<Q> {
    let mut acc = Poly::zero();
    for j in 0..=n {
        let a = &Q::new(n as i64, 2) - &Q::from_int(j as i64);
        let mut term = shift(p, &a).scale(&binomial(n as i64, j as i64));
        if j % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

/// Coordinates of a scalar polynomial in the `phi` basis.
pub fn phi_coords(p: &Poly<Q>) -> Vec<Q> {
    let mut rest = p.clone();
    let mut out = vec![Q::zero(); p.coeffs().len()];
    while let Some(d) = rest.degree() {
        let c = &rest.leading() * &factorial(d as u64);
        rest = &rest - &phi(d).scale(&c);
        out[d] = c;
    }
    out
}

fn monomial(j: usize) -> Poly<Q> {
    let mut c = vec![Q::zero(); j + 1];
    c[j] = Q::one();
    Poly::new(c)
}

impl PolyUea {
    pub fn new(coeffs: Vec<Uea>, basis: XBasis) -> Self {
        let mut p = PolyUea { coeffs, basis };
        p.trim();
        p
    }

    pub fn monomial(coeffs: Vec<Uea>) -> Self {
        Self::new(coeffs, XBasis::Monomial)
    }

    pub fn scalar_poly(p: &Poly<Q>) -> Self {
        Self::monomial(p.coeffs().iter().map(|c| Uea::scalar(c.clone())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Uea::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: usize) -> Uea {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    fn basis_poly(&self, j: usize) -> Poly<Q> {
        match self.basis {
            XBasis::Monomial => monomial(j),
            XBasis::Phi => phi(j),
        }
    }

    /// Applies a linear map of `C[x]` given on scalar polynomials, with
    /// the result in the monomial basis.
    pub fn map_scalar(&self, f: impl Fn(&Poly<Q>) -> Poly<Q>) -> PolyUea {
        let mut out: Vec<Uea> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = f(&self.basis_poly(j));
            if out.len() < q.coeffs().len() {
                out.resize(q.coeffs().len(), Uea::zero());
            }
            for (i, s) in q.coeffs().iter().enumerate() {
                out[i].axpy(s, c);
            }
        }
        PolyUea::monomial(out)
    }

    pub fn to_monomial(&self) -> PolyUea {
        match self.basis {
            XBasis::Monomial => self.clone(),
            XBasis::Phi => self.map_scalar(Poly::clone),
        }
    }

    pub fn to_phi(&self) -> PolyUea {
        if self.basis == XBasis::Phi {
            return self.clone();
        }
        let mut out: Vec<Uea> = vec![Uea::zero(); self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, s) in phi_coords(&monomial(j)).iter().enumerate() {
                out[i].axpy(s, c);
            }
        }
        PolyUea::new(out, XBasis::Phi)
    }

    pub fn in_basis(&self, b: XBasis) -> PolyUea {
        match b {
            XBasis::Monomial => self.to_monomial(),
            XBasis::Phi => self.to_phi(),
        }
    }

    /// The `n`-th discrete derivative, in the basis of `self`.
    pub fn discrete_derivative(&self, n: usize) -> PolyUea {
        match self.basis {
            // phi_k^{(n)} = phi_{k-n}
            XBasis::Phi => PolyUea::new(self.coeffs.iter().skip(n).cloned().collect(), XBasis::Phi),
            XBasis::Monomial => self.map_scalar(|p| discrete_derivative_scalar(p, n)),
        }
    }

    /// Coefficientwise image under a linear map of `U(k)`, such as a derivation.
    pub fn map_coeffs(&self, f: impl Fn(&Uea) -> Uea) -> PolyUea {
        PolyUea::new(self.coeffs.iter().map(f).collect(), self.basis)
    }

    /// Right evaluation `sum_j c_j p_j(arg) r` computed in `engine`, where
    /// `arg` lies in a commutative subalgebra and `r` is any element.
    pub fn eval_right(&self, uk: &Pbw, engine: &Pbw, arg: &Uea, r: &Uea) -> Uea {
        let mono = self.to_monomial();
        let mut pw = r.clone();
        let mut out = Uea::zero();
        for (j, c) in mono.coeffs.iter().enumerate() {
            if j > 0 {
                pw = uk.mul(arg, &pw);
            }
            if !c.is_zero() {
                out.axpy(&Q::one(), &engine.mul(c, &pw));
            }
        }
        engine.reduce(&out)
    }
}

/// `(a - t)` as an element of `U(k)` for a scalar `a` and Lie element `t`.
pub fn affine(a: &Q, t: &Uea) -> Uea {
    Uea::scalar(a.clone()).sub(t)
}

/// Scalar polynomial evaluated at an element of a commutative subalgebra.
pub fn eval_scalar_poly(uk: &Pbw, p: &Poly<Q>, arg: &Uea) -> Uea {
    let mut out = Uea::zero();
    for c in p.coeffs().iter().rev() {
        out = uk.mul(arg, &out);
        out.axpy(&Q::one(), &Uea::scalar(c.clone()));
    }
    out
}
