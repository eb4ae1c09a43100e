//! The polynomial calculus on `U(k)[x]` and the equations cutting out the
//! algebra `B` inside `U(k)^M (x) U(a)`.

mod poly;
pub mod battery;
pub mod congruence;

use num_traits::One;
use serde::Serialize;

use crate::exactnum::{binomial, Rational};
use crate::uea::{IwasawaElement, Uea, Workbench};

pub use poly::{discrete_derivative_scalar, eval_scalar_poly, phi, phi_coords, shift, PolyUea, XBasis};

type Q = Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BalgError {
    #[error("coefficient {0} is not in U(k)")]
    NotInUk(usize),
    #[error("zero element has no leading data")]
    Zero,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationRecord {
    pub id: String,
    pub residual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BEquationReport {
    pub records: Vec<EquationRecord>,
    pub passed: bool,
}

impl BEquationReport {
    fn from_records(records: Vec<EquationRecord>) -> Self {
        let passed = records.iter().all(|r| r.passed);
        BEquationReport { records, passed }
    }

    pub fn first_failure(&self) -> Option<&EquationRecord> {
        self.records.iter().find(|r| !r.passed)
    }
}

/// Leading coefficient and degree of an element of `U(k) (x) U(a)`.
#[derive(Clone, Debug)]
pub struct LeadingData {
    pub degree: usize,
    pub leading: Uea,
    pub parity_even: bool,
}

pub fn leading_data(b: &IwasawaElement) -> Result<LeadingData, BalgError> {
    let m = b.degree().ok_or(BalgError::Zero)?;
    Ok(LeadingData { degree: m, leading: b.coeffs[m].clone(), parity_even: m % 2 == 0 })
}

/// `b(x)` with `Z` replaced by `x`.
pub fn to_poly(b: &IwasawaElement) -> PolyUea {
    PolyUea::monomial(b.coeffs.clone())
}

pub fn from_poly(p: &PolyUea) -> IwasawaElement {
    IwasawaElement::new(p.to_monomial().coeffs)
}

/// The distinguished elements entering the equations, as `U(k)` elements.
pub struct Setup<'a> {
    pub wb: &'a Workbench,
    pub e: Vec<Q>,
    pub xdelta: Vec<Q>,
    pub y: Uea,
    pub ytilde: Uea,
    pub h: Uea,
}

impl<'a> Setup<'a> {
    pub fn new(wb: &'a Workbench) -> Self {
        Setup { wb, e: wb.lie("E"), xdelta: wb.lie("Xdelta"), y: wb.el("Y"), ytilde: wb.el("Ytilde"), h: wb.el("H") }
    }

    pub fn e_uea(&self) -> Uea {
        Uea::from_lie(&self.e)
    }

    /// `E^n` in `U(k)`.
    pub fn e_pow(&self, n: u32) -> Uea {
        self.wb.uk().pow(&self.e_uea(), n)
    }

    /// `Edot^k (u)`.
    pub fn edot(&self, k: usize, u: &Uea) -> Uea {
        self.wb.uk().ad_pow(&self.e, k as u32, u)
    }

    pub fn edot_poly(&self, k: usize, p: &PolyUea) -> PolyUea {
        p.map_coeffs(|c| self.edot(k, c))
    }

    fn check_uk(&self, b: &IwasawaElement) -> Result<(), BalgError> {
        let nk = self.wb.model.dim_k();
        for (j, c) in b.coeffs.iter().enumerate() {
            if c.iter().any(|(m, _)| m.max_label_at_least(nk)) {
                return Err(BalgError::NotInUk(j));
            }
        }
        Ok(())
    }

    /// `E^n b(n - Y - 1) - b(-n - Y - 1) E^n` reduced modulo `U(k)m+`.
    pub fn b_residual(&self, b: &IwasawaElement, n: u32) -> Uea {
        let (uk, md) = (self.wb.uk(), self.wb.mod_mplus());
        let p = to_poly(b);
        let nn = Q::from_int(i64::from(n));
        let lhs_arg = poly::affine(&(&nn - &Q::one()), &self.y);
        let inner = p.eval_right(uk, md, &lhs_arg, &Uea::one());
        let lhs = md.mul(&self.e_pow(n), &inner);
        let rhs_arg = poly::affine(&(-&nn - Q::one()), &self.y);
        let rhs = p.eval_right(uk, md, &rhs_arg, &self.e_pow(n));
        lhs.sub(&rhs)
    }

    pub fn check_b_membership(&self, b: &IwasawaElement, n_max: u32) -> Result<BEquationReport, BalgError> {
        self.check_uk(b)?;
        let mut records = vec![self.m_invariance(b)];
        records.extend((1..=n_max).map(|n| {
            let r = self.b_residual(b, n);
            EquationRecord { id: format!("n={n}"), residual: self.wb.fmt(&r), passed: r.is_zero() }
        }));
        Ok(BEquationReport::from_records(records))
    }

    /// `Xdot(b_j) = 0` for every `X` in `m` and every coefficient.
    pub fn m_invariance(&self, b: &IwasawaElement) -> EquationRecord {
        let uk = self.wb.uk();
        let m = self.wb.model.m_basis();
        let bad = b.coeffs.iter().enumerate().find_map(|(j, c)| {
            m.iter().map(|x| uk.ad(x, c)).find(|r| !r.is_zero()).map(|r| (j, r))
        });
        EquationRecord {
            id: "m-invariant".into(),
            residual: bad.as_ref().map_or("0".into(), |(j, r)| format!("b_{j}: {}", self.wb.fmt(r))),
            passed: bad.is_none(),
        }
    }

    /// Residual of equation `n` of the triangular system, modulo `U(k)m+`.
    pub fn triangular_residual(&self, c: &PolyUea, n: usize) -> Uea {
        let (uk, md) = (self.wb.uk(), self.wb.mod_mplus());
        let half_n = Q::new(n as i64, 2);
        let a = self.edot_poly(n + 1, &c.discrete_derivative(n));
        let a_arg = poly::affine(&(&half_n + &Q::one()), &self.ytilde);
        let first = a.eval_right(uk, md, &a_arg, &Uea::one());
        let b = self.edot_poly(n, &c.discrete_derivative(n + 1));
        let b_arg = poly::affine(&(&half_n - &Q::new(1, 2)), &self.ytilde);
        let second = b.eval_right(uk, md, &b_arg, &self.e_uea());
        first.add(&second)
    }

    pub fn check_triangular(&self, c: &PolyUea) -> BEquationReport {
        let deg = c.degree().unwrap_or(0);
        let records = (0..=deg)
            .map(|n| {
                let r = self.triangular_residual(c, n);
                EquationRecord { id: format!("n={n}"), residual: self.wb.fmt(&r), passed: r.is_zero() }
            })
            .collect();
        BEquationReport::from_records(records)
    }

    /// `t_ij = sum_k (-1)^k C(i,k) (H + i/2 - 1 - k)^j`.
    pub fn t_ij(&self, h: &Uea, i: usize, j: usize) -> Uea {
        let uk = self.wb.uk();
        let mut out = Uea::zero();
        for k in 0..=i {
            let shift = &(&Q::new(i as i64, 2) - &Q::one()) - &Q::from_int(k as i64);
            let base = h.add(&Uea::scalar(shift));
            let mut c = binomial(i as i64, k as i64);
            if k % 2 == 1 {
                c = -c;
            }
            out.axpy(&c, &uk.pow(&base, j as u32));
        }
        out
    }

    /// `c(x) = b(x + H - 1)` in the `phi` basis, via `c_i = sum_j b_j t_ij`.
    pub fn shift_substitute_with(&self, b: &PolyUea, h: &Uea) -> PolyUea {
        let b = b.to_monomial();
        let m = b.coeffs.len();
        let uk = self.wb.uk();
        let coeffs = (0..m)
            .map(|i| {
                let mut ci = Uea::zero();
                for j in i..m {
                    if !b.coeffs[j].is_zero() {
                        ci.axpy(&Q::one(), &uk.mul(&b.coeffs[j], &self.t_ij(h, i, j)));
                    }
                }
                ci
            })
            .collect();
        PolyUea::new(coeffs, XBasis::Phi)
    }

    pub fn shift_substitute(&self, b: &PolyUea) -> PolyUea {
        self.shift_substitute_with(b, &self.h)
    }

    /// `epsilon(l, n)` as an exact element of `U(k)`.
    pub fn epsilon(&self, c: &PolyUea, l: usize, n: usize) -> Uea {
        let uk = self.wb.uk();
        let c = c.to_phi();
        let term = |a: usize, b: usize| {
            // (-1)^b Edot^a(c^{(b)})(-b/2 + a - Ytilde) E^b
            let p = self.edot_poly(a, &c.discrete_derivative(b));
            let arg = poly::affine(&(&Q::from_int(a as i64) - &Q::new(b as i64, 2)), &self.ytilde);
            let v = p.eval_right(uk, uk, &arg, &self.e_pow(b as u32));
            if b % 2 == 1 {
                v.neg()
            } else {
                v
            }
        };
        term(l, n).sub(&term(n, l))
    }

    /// `Edot^{m+1}(c_j)` and `Edot^{2m+1-j}(b_j)` modulo `U(k)m+`.
    pub fn leading_vanishing(&self, b: &IwasawaElement) -> (Vec<Uea>, Vec<Uea>) {
        let md = self.wb.mod_mplus();
        let m = b.degree().unwrap_or(0);
        let c = self.shift_substitute(&to_poly(b));
        let cs = (0..=m).map(|j| md.reduce(&self.edot(m + 1, &c.coeff(j)))).collect();
        let bs = (0..=m).map(|j| md.reduce(&self.edot(2 * m + 1 - j, &b.coeff(j)))).collect();
        (cs, bs)
    }
}

/// Default number of equations checked for an element of degree `m`.
pub fn default_n_max(b: &IwasawaElement) -> u32 {
    2 * b.degree().unwrap_or(0) as u32 + 2
}

#[cfg(test)]
mod tests;
