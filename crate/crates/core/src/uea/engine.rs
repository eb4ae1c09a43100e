use std::cell::RefCell;
use std::rc::Rc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::exactnum::Rational;
use crate::liealg::LieAlgebra;

use super::element::{Mono, Uea};

type Lie = Vec<(usize, Rational)>;

/// PBW multiplication in `U(a)` for a Lie algebra `a` over `Q`, with basis
/// order given by the algebra's basis order.
///
/// With a truncation bound `b`, all results are normal forms modulo the left
/// ideal generated by the basis elements with label `>= b` (these must span a
/// subalgebra). Every product is built by left multiplications onto the
/// right factor, so `mul(u, v)` is exact modulo that ideal for any `u`.
pub struct Pbw {
    n: usize,
    trunc: usize,
    names: Vec<String>,
    table: Vec<Vec<Lie>>,
    memo: RefCell<FxHashMap<(u8, Mono), Rc<Uea>>>,
}

fn binom_next(b: &Rational, e: u32, k: u32) -> Rational {
    &(b * &Rational::from_int(i64::from(e - k + 1))) / &Rational::from_int(i64::from(k))
}

impl Pbw {
    pub fn new(alg: &LieAlgebra<Rational>) -> Self {
        Self::truncated(alg, alg.dim())
    }

    pub fn truncated(alg: &LieAlgebra<Rational>, trunc: usize) -> Self {
        let n = alg.dim();
        assert!(n <= 255, "too many generators");
        let table = (0..n)
            .map(|i| (0..n).map(|j| alg.bracket_basis(i, j).iter().map(|(k, c)| (*k, c.clone())).collect()).collect())
            .collect();
        Pbw { n, trunc: trunc.min(n), names: alg.names().to_vec(), table, memo: RefCell::new(FxHashMap::default()) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn memo_size(&self) -> usize {
        self.memo.borrow().len()
    }

    pub fn fmt(&self, u: &Uea) -> String {
        u.fmt_with(&self.names)
    }

    /// Normal form modulo the truncation ideal.
    pub fn reduce(&self, u: &Uea) -> Uea {
        if self.trunc == self.n {
            u.clone()
        } else {
            u.truncate(self.trunc)
        }
    }

    fn bracket_lie(&self, j: usize, l: &Lie) -> Lie {
        let mut acc: FxHashMap<usize, Rational> = FxHashMap::default();
        for (i, c) in l {
            for (k, s) in &self.table[j][*i] {
                *acc.entry(*k).or_default() += c * s;
            }
        }
        let mut out: Lie = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// `x_i * m` when no straightening is needed.
    fn prepend(&self, i: usize, m: &Mono) -> Option<Option<Mono>> {
        match m.0.first() {
            None => Some((i < self.trunc).then(|| Mono::gen(i))),
            Some(&(j, e)) if i <= usize::from(j) => {
                let mut v = Vec::with_capacity(m.0.len() + 1);
                if i == usize::from(j) {
                    v.push((j, e + 1));
                    v.extend_from_slice(&m.0[1..]);
                } else {
                    v.push((i as u8, 1));
                    v.extend_from_slice(&m.0);
                }
                Some(Some(Mono(v)))
            }
            _ => None,
        }
    }

    /// `x_i * m` for a normal monomial `m` below the truncation bound.
    fn lmul_mono(&self, i: usize, m: &Mono) -> Rc<Uea> {
        if let Some(p) = self.prepend(i, m) {
            return Rc::new(p.map(|m| Uea::term(m, Rational::one())).unwrap_or_default());
        }
        let key = (i as u8, m.clone());
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let (j, e) = m.0[0];
        let (j, e) = (usize::from(j), u32::from(e));
        let rest = Mono(m.0[1..].to_vec());
        // x_i x_j^e = sum_k C(e,k) x_j^(e-k) (-ad x_j)^k (x_i)
        let head = self.lmul_mono(i, &rest);
        let mut acc = self.lmul_pow(j, e, &head);
        let mut l: Lie = vec![(i, Rational::one())];
        let mut b = Rational::one();
        for k in 1..=e {
            l = self.bracket_lie(j, &l).into_iter().map(|(x, c)| (x, -c)).collect();
            if l.is_empty() {
                break;
            }
            b = binom_next(&b, e, k);
            let mut s = Uea::zero();
            for (lab, c) in &l {
                s.axpy(c, &self.lmul_mono(*lab, &rest));
            }
            acc.axpy(&b, &self.lmul_pow(j, e - k, &s));
        }
        let r = Rc::new(acc);
        self.memo.borrow_mut().insert(key, r.clone());
        r
    }

    /// `x_i * u`.
    pub fn lmul(&self, i: usize, u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (m, c) in u.iter() {
            if m.max_label_at_least(self.trunc) {
                continue;
            }
            match self.prepend(i, m) {
                Some(Some(p)) => out.add_term(p, c.clone()),
                Some(None) => {}
                None => out.axpy(c, &self.lmul_mono(i, m)),
            }
        }
        out
    }

    /// `x_i^e * u`.
    pub fn lmul_pow(&self, i: usize, e: u32, u: &Uea) -> Uea {
        let mut w = self.reduce(u);
        for _ in 0..e {
            if w.is_zero() {
                break;
            }
            w = self.lmul(i, &w);
        }
        w
    }

    /// `m * v` for a monomial `m`.
    pub fn mono_mul(&self, m: &Mono, v: &Uea) -> Uea {
        let mut w = self.reduce(v);
        for &(a, e) in m.0.iter().rev() {
            if w.is_zero() {
                break;
            }
            w = self.lmul_pow(usize::from(a), u32::from(e), &w);
        }
        w
    }

    pub fn mul(&self, u: &Uea, v: &Uea) -> Uea {
        let v = self.reduce(v);
        let mut out = Uea::zero();
        if v.is_zero() {
            return out;
        }
        for (m, c) in u.iter() {
            out.axpy(c, &self.mono_mul(m, &v));
        }
        out
    }

    pub fn mul_all(&self, factors: &[&Uea]) -> Uea {
        let mut acc = Uea::one();
        for f in factors.iter().rev() {
            acc = self.mul(f, &acc);
        }
        self.reduce(&acc)
    }

    pub fn pow(&self, u: &Uea, k: u32) -> Uea {
        let mut acc = self.reduce(&Uea::one());
        for _ in 0..k {
            acc = self.mul(u, &acc);
        }
        acc
    }

    /// Multiplication by a Lie element on the left.
    pub fn lmul_lie(&self, x: &[Rational], u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.axpy(c, &self.lmul(i, u));
            }
        }
        out
    }

    /// The derivation `ad(x_i)`; exact modulo the truncation ideal.
    pub fn ad_gen(&self, i: usize, u: &Uea) -> Uea {
        let left = self.lmul(i, u);
        let right = self.mul(u, &Uea::gen(i));
        left.sub(&right)
    }

    /// `ad(x)(u) = xu - ux` for a Lie element `x`.
    pub fn ad(&self, x: &[Rational], u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.axpy(c, &self.ad_gen(i, u));
            }
        }
        out
    }

    /// `ad(x)^k (u)`.
    pub fn ad_pow(&self, x: &[Rational], k: u32, u: &Uea) -> Uea {
        (0..k).fold(u.clone(), |acc, _| self.ad(x, &acc))
    }

    /// Lie element as an element of the enveloping algebra, reduced.
    pub fn lie(&self, v: &[Rational]) -> Uea {
        self.reduce(&Uea::from_lie(v))
    }

    /// Symmetrization of a product of Lie elements.
    pub fn symmetrize(&self, xs: &[Vec<Rational>]) -> Uea {
        let n = xs.len();
        let mut out = Uea::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0i64;
        permutations(&mut perm, 0, &mut |p| {
            let fs: Vec<Uea> = p.iter().map(|&i| Uea::from_lie(&xs[i])).collect();
            let refs: Vec<&Uea> = fs.iter().collect();
            out.axpy(&Rational::one(), &self.mul_all(&refs));
            count += 1;
        });
        out.scale(&Rational::new(1, count.max(1)))
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}
