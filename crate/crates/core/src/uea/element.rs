use std::fmt;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::exactnum::Rational;

/// A PBW monomial: labels in strictly increasing order with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub Vec<(u8, u8)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Mono(vec![(i as u8, 1)])
    }

    pub fn power(i: usize, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(i as u8, e as u8)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| u32::from(e)).sum()
    }

    pub fn exponent(&self, label: usize) -> u32 {
        self.0.iter().find(|&&(l, _)| usize::from(l) == label).map_or(0, |&(_, e)| u32::from(e))
    }

    /// Largest label present.
    pub fn last_label(&self) -> Option<usize> {
        self.0.last().map(|&(l, _)| usize::from(l))
    }

    pub fn max_label_at_least(&self, bound: usize) -> bool {
        self.last_label().is_some_and(|l| l >= bound)
    }

    /// Splits off all labels `>= bound`.
    pub fn split_at_label(&self, bound: usize) -> (Mono, Mono) {
        let cut = self.0.iter().position(|&(l, _)| usize::from(l) >= bound).unwrap_or(self.0.len());
        (Mono(self.0[..cut].to_vec()), Mono(self.0[cut..].to_vec()))
    }

    /// Concatenation of two monomials whose label ranges do not interleave.
    pub fn concat(&self, other: &Mono) -> Mono {
        debug_assert!(match (self.0.last(), other.0.first()) {
            (Some(a), Some(b)) => a.0 < b.0,
            _ => true,
        });
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Mono(v)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(l, e)| {
                let n = &names[usize::from(l)];
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// An element of a universal enveloping algebra in PBW normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Uea {
    terms: FxHashMap<Mono, Rational>,
}

impl Uea {
    pub fn zero() -> Self {
        Uea::default()
    }

    pub fn one() -> Self {
        Uea::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Uea::term(Mono::one(), c)
    }

    pub fn term(m: Mono, c: Rational) -> Self {
        let mut u = Uea::zero();
        u.add_term(m, c);
        u
    }

    pub fn gen(i: usize) -> Self {
        Uea::term(Mono::gen(i), Rational::one())
    }

    /// The image of a Lie algebra element given in basis coordinates.
    pub fn from_lie(v: &[Rational]) -> Self {
        let mut u = Uea::zero();
        for (i, c) in v.iter().enumerate() {
            u.add_term(Mono::gen(i), c.clone());
        }
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &Uea) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn add(&self, other: &Uea) -> Uea {
        let mut r = self.clone();
        r.axpy(&Rational::one(), other);
        r
    }

    pub fn sub(&self, other: &Uea) -> Uea {
        let mut r = self.clone();
        r.axpy(&-Rational::one(), other);
        r
    }

    pub fn scale(&self, c: &Rational) -> Uea {
        if c.is_zero() {
            return Uea::zero();
        }
        Uea { terms: self.terms.iter().map(|(m, x)| (m.clone(), c * x)).collect() }
    }

    pub fn neg(&self) -> Uea {
        self.scale(&-Rational::one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Drops every monomial containing a label `>= bound`.
    pub fn truncate(&self, bound: usize) -> Uea {
        Uea {
            terms: self.terms.iter().filter(|(m, _)| !m.max_label_at_least(bound)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Keeps only the monomials for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Uea {
        Uea { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Constant term.
    pub fn constant(&self) -> Rational {
        self.coeff(&Mono::one())
    }

    /// Whether the element is a scalar multiple of one.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::ZERO),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| if m.is_one() { c.to_string() } else { format!("{c}*{}", m.fmt_with(names)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=255).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

impl FromIterator<(Mono, Rational)> for Uea {
    fn from_iter<I: IntoIterator<Item = (Mono, Rational)>>(iter: I) -> Self {
        let mut u = Uea::zero();
        for (m, c) in iter {
            u.add_term(m, c);
        }
        u
    }
}
