use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;

use super::element::{Mono, Uea};
use super::engine::Pbw;

/// `sum_j b_j (x) Z^j` with `b_j` in `U(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IwasawaElement {
    pub coeffs: Vec<Uea>,
}

impl IwasawaElement {
    pub fn new(mut coeffs: Vec<Uea>) -> Self {
        while coeffs.last().is_some_and(Uea::is_zero) {
            coeffs.pop();
        }
        IwasawaElement { coeffs }
    }

    pub fn one() -> Self {
        IwasawaElement::new(vec![Uea::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `Z`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> Uea {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Product in `U(k) (x) U(a)`, where `Z` commutes with `U(k)`.
    pub fn mul(&self, other: &Self, k: &Pbw) -> Self {
        if self.is_zero() || other.is_zero() {
            return IwasawaElement::default();
        }
        let mut out = vec![Uea::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].axpy(&Rational::one(), &k.mul(a, b));
            }
        }
        IwasawaElement::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        IwasawaElement::new(self.coeffs.iter().map(|b| b.scale(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IwasawaElement::new((0..n).map(|j| self.coeff(j).add(&other.coeff(j))).collect())
    }

    /// Collects a `U(g)` element (already reduced modulo `U(g)n`) by powers
    /// of the label `z`. Fails if a label above `z` remains.
    pub fn from_reduced(u: &Uea, z: usize) -> Option<Self> {
        let mut coeffs: Vec<Uea> = Vec::new();
        for (m, c) in u.iter() {
            let (head, tail) = m.split_at_label(z);
            let e = match tail.0.as_slice() {
                [] => 0,
                [(l, e)] if usize::from(*l) == z => usize::from(*e),
                _ => return None,
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Uea::zero());
            }
            coeffs[e].add_term(head, c.clone());
        }
        Some(IwasawaElement::new(coeffs))
    }

    /// Back into `U(g)` with `Z` carrying label `z`.
    pub fn to_uea(&self, z: usize) -> Uea {
        let mut out = Uea::zero();
        for (j, b) in self.coeffs.iter().enumerate() {
            let zj = Mono::power(z, j as u32);
            for (m, c) in b.iter() {
                out.add_term(m.concat(&zj), c.clone());
            }
        }
        out
    }
}

/// Serialized form of a PBW monomial term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exponents: std::collections::BTreeMap<String, u32>,
    pub coeff: String,
}

pub fn uea_to_json(u: &Uea, names: &[String]) -> Vec<TermJson> {
    u.sorted_terms()
        .into_iter()
        .map(|(m, c)| TermJson {
            exponents: m.0.iter().map(|&(l, e)| (names[usize::from(l)].clone(), u32::from(e))).collect(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn uea_from_json(terms: &[TermJson], names: &[String]) -> Result<Uea, String> {
    let mut out = Uea::zero();
    for t in terms {
        let mut v: Vec<(u8, u8)> = Vec::new();
        for (name, &e) in &t.exponents {
            let l = names.iter().position(|n| n == name).ok_or_else(|| format!("unknown label {name}"))?;
            if e > 0 {
                v.push((l as u8, e as u8));
            }
        }
        v.sort();
        let c: Rational = t.coeff.parse().map_err(|e| format!("{e:?}"))?;
        out.add_term(Mono(v), c);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IwasawaJson {
    pub coeffs: Vec<Vec<TermJson>>,
}

impl IwasawaElement {
    pub fn to_json(&self, names: &[String]) -> IwasawaJson {
        IwasawaJson { coeffs: self.coeffs.iter().map(|b| uea_to_json(b, names)).collect() }
    }

    pub fn from_json(j: &IwasawaJson, names: &[String]) -> Result<Self, String> {
        Ok(IwasawaElement::new(j.coeffs.iter().map(|c| uea_from_json(c, names)).collect::<Result<_, _>>()?))
    }
}
