//! Irreducible `k`-modules, their `m`-invariants, the labels `xi_{k,l}` and
//! the Kostant degree of `m`-invariant elements of `U(k)`.

pub mod battery;
mod irrep;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::check::Check;
use crate::exactnum::sparse::{kernel_of_images, rank_of, Echelon, SparseVec};
use crate::exactnum::{binomial, factorial, split_linear, Matrix, Poly, Rational};
use crate::rootdata::dot;
use crate::rootdata::f4::{weights, Weight};
use crate::uea::{MonoIndex, Uea, Workbench};

pub use irrep::{build_irrep, Backend, Irrep, ScanOrder, SimpleRoot, SpMat};

type Q = Rational;
type Vq = Vec<Q>;

pub const DEFAULT_DIMENSION_CAP: usize = 512;
/// Largest filtration degree accepted by [`Repth::kostant`].
pub const DEFAULT_DEGREE_CAP: u32 = 4;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RepthError {
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("the Weyl dimension formula predicts {predicted}, above the bound {cap}")]
    TooLarge { predicted: String, cap: usize },
    #[error("filtration degree {degree} exceeds the bound {cap}")]
    DegreeTooLarge { degree: u32, cap: u32 },
    #[error("element is not m-invariant")]
    NotMInvariant,
    #[error("Casimir eigenvalue {0} matches no label")]
    UnknownEigenvalue(String),
    #[error("labels {0} share a Casimir eigenvalue and cannot be separated")]
    Unresolved(String),
    #[error("{0}")]
    Construction(String),
}

pub fn fmt_weight(w: &[Q]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// The label `(k, l)` of a class in `Gamma`, with highest weight
/// `xi_{k,l} = (k/2)(gamma4 + delta) + l gamma3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KTypeLabel {
    pub k: u32,
    pub l: u32,
}

impl KTypeLabel {
    pub fn new(k: u32, l: u32) -> Self {
        KTypeLabel { k, l }
    }

    pub fn xi(&self) -> Weight {
        weights::xi(i64::from(self.k), i64::from(self.l))
    }

    /// `d(gamma_{k,l}) = k + 2l`.
    pub fn degree(&self) -> u32 {
        self.k + 2 * self.l
    }

    pub fn in_gamma1(&self) -> bool {
        self.k % 2 == 0
    }
}

impl std::fmt::Display for KTypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Isotypic decomposition of an `m`-invariant element.
#[derive(Clone, Debug, Serialize)]
pub struct KostantDecomposition {
    pub labels: Vec<KTypeLabel>,
    /// `None` for the zero element.
    pub degree: Option<u32>,
    #[serde(skip)]
    pub components: Vec<IsotypicPart>,
}

/// The projection of an element onto one Casimir eigenvalue.
#[derive(Clone, Debug)]
pub struct IsotypicPart {
    pub eigenvalue: Q,
    pub labels: Vec<KTypeLabel>,
    pub part: Uea,
}

impl KostantDecomposition {
    /// Sum of the parts whose labels all have the top degree, provided no
    /// part mixes the top degree with lower ones.
    pub fn top_part(&self) -> Option<Uea> {
        let d = self.degree?;
        let mut out = Uea::zero();
        for c in &self.components {
            let top = c.labels.iter().filter(|l| l.degree() == d).count();
            if top == c.labels.len() && top > 0 {
                out.axpy(&Q::one(), &c.part);
            } else if top > 0 {
                return None;
            }
        }
        Some(out)
    }
}

/// Representation-theoretic tools bound to the F4 model.
pub struct Repth<'a> {
    pub wb: &'a Workbench,
    pub backend: Backend<'a>,
    pub cap: usize,
    pub degree_cap: u32,
    kinv: Matrix<Q>,
    dual_form: Matrix<Q>,
    xdelta: Vq,
    e: Vq,
    x1: Vq,
    xm1: Vq,
    t1: Vq,
}

impl<'a> Repth<'a> {
    pub fn new(wb: &'a Workbench) -> Result<Self, RepthError> {
        let m = &wb.model;
        let backend = Backend::new(&m.k, m.h_k(), m.k_simple(), m.positive_compact())?;
        let kinv = m.killing_k.inverse().ok_or_else(|| RepthError::Construction("Killing form of k is degenerate".into()))?;
        let h = m.h_k();
        let gram = Matrix::from_rows(h.iter().map(|x| h.iter().map(|y| m.kappa_k(x, y)).collect()).collect());
        let dual_form = gram.inverse().ok_or_else(|| RepthError::Construction("degenerate form on the Cartan subalgebra".into()))?;
        Ok(Repth {
            wb,
            backend,
            cap: DEFAULT_DIMENSION_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            kinv,
            dual_form,
            xdelta: m.el("Xdelta"),
            e: m.el("E"),
            x1: m.el("X1"),
            xm1: m.el("X-1"),
            t1: m.el("t1"),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn weyl_dimension(&self, xi: &[Q]) -> Q {
        self.backend.weyl_dimension(xi)
    }

    pub fn irrep(&self, xi: &[Q]) -> Result<Irrep, RepthError> {
        build_irrep(&self.backend, xi, self.cap, ScanOrder::Forward)
    }

    pub fn irrep_label(&self, l: KTypeLabel) -> Result<Irrep, RepthError> {
        self.irrep(&l.xi())
    }

    /// Fundamental weights of `k`, dual to the simple coroots.
    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let rows: Vec<Vq> = self.backend.simple.iter().map(|s| s.coroot.clone()).collect();
        let a = Matrix::from_rows(rows);
        let n = self.backend.rank();
        (0..n)
            .map(|i| {
                let rhs: Vq = (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
                a.solve(&rhs).expect("coroots are independent")
            })
            .collect()
    }

    /// The label of `w` when it lies in the set `{xi_{k,l} : k, l >= 0}`.
    pub fn xi_label(&self, w: &[Q]) -> Option<KTypeLabel> {
        // xi_{k,l} = (l/2, k + l/2, l/2, l/2)
        let l = &w[0] * &Q::from_int(2);
        let k = &w[1] - &w[0];
        if w[2] != w[0] || w[3] != w[0] || !l.is_integer() || !k.is_integer() || l.is_negative() || k.is_negative() {
            return None;
        }
        Some(KTypeLabel::new(k.to_i64()? as u32, l.to_i64()? as u32))
    }

    /// Coordinates of `w` in the simple roots of `k`.
    pub fn simple_coords(&self, w: &[Q]) -> Option<Vq> {
        let cols: Vec<Vq> = self.backend.simple.iter().map(|s| s.alpha.clone()).collect();
        Matrix::from_cols(&cols, w.len()).solve(w)
    }

    /// Whether `w` is a nonnegative integral combination of simple roots.
    pub fn in_positive_cone(&self, w: &[Q]) -> bool {
        self.simple_coords(w).is_some_and(|c| c.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    /// Basis of `V^m`, the joint kernel of the `m`-action.
    pub fn m_invariants(&self, v: &Irrep) -> Vec<SparseVec<Q>> {
        let mb = self.wb.model.m_basis();
        let n = v.dim();
        let images = (0..n).map(|i| {
            let e = SparseVec::from([(i, Q::one())]);
            let mut out = SparseVec::new();
            for (b, x) in mb.iter().enumerate() {
                out.extend(v.act(x, &e).into_iter().map(|(k, c)| (b * n + k, c)));
            }
            out
        });
        kernel_of_images(images)
    }

    /// `X_delta^p E^q (v)`.
    pub fn xe(&self, v: &Irrep, p: u32, q: u32, x: &SparseVec<Q>) -> SparseVec<Q> {
        v.act_pow(&self.xdelta, p, &v.act_pow(&self.e, q, x))
    }

    /// Whether `x` has weight `mu` under the Cartan subalgebra.
    fn has_weight(&self, v: &Irrep, x: &SparseVec<Q>, mu: &[Q]) -> bool {
        !x.is_empty() && x.keys().all(|k| v.weights[*k].as_slice() == mu)
    }

    /// Checks that `X_delta^k E^l (v)` is a nonzero highest weight vector and
    /// that `X_delta^p E^q (v)` vanishes exactly when `p > k` or `p + q > k + l`.
    pub fn verify_hw(&self, v: &Irrep, label: KTypeLabel, x: &SparseVec<Q>) -> Vec<Check> {
        let tag = format!("hw{label}");
        let (k, l) = (label.k, label.l);
        let top = self.xe(v, k, l, x);
        let killed = v.raising.iter().all(|r| r.apply(&top).is_empty());
        let mut out = vec![
            Check::new(format!("{tag}.nonzero"), "X_delta^k E^l v != 0", !top.is_empty()),
            Check::new(format!("{tag}.dominant"), "X_delta^k E^l v is killed by k+", killed),
            Check::new(format!("{tag}.weight"), "X_delta^k E^l v has weight xi_{k,l}", self.has_weight(v, &top, &label.xi())),
        ];
        let mut bad = Vec::new();
        for p in 0..=k + 1 {
            for q in 0..=k + l + 1 {
                let zero = self.xe(v, p, q, x).is_empty();
                if zero != (p > k || p + q > k + l) {
                    bad.push((p, q));
                }
            }
        }
        out.push(Check::with(format!("{tag}.vanishing"), "X_delta^p E^q v = 0 iff p > k or p+q > k+l", bad.is_empty(), || format!("{bad:?}")));
        out
    }

    /// The sl2-ladder identities for `{X_delta^{k-j} E^{l+j} v}`.
    pub fn verify_ladder(&self, v: &Irrep, label: KTypeLabel, x: &SparseVec<Q>) -> Vec<Check> {
        let tag = format!("ladder{label}");
        let (k, l) = (label.k as i64, label.l as i64);
        let w = |a: i64, b: i64| if a < 0 || b < 0 { SparseVec::new() } else { self.xe(v, a as u32, b as u32, x) };
        let scaled = |c: Q, s: SparseVec<Q>| -> SparseVec<Q> {
            if c.is_zero() {
                return SparseVec::new();
            }
            s.into_iter().map(|(i, y)| (i, &y * &c)).collect()
        };
        let (mut raise, mut lower, mut power, mut weight) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let u = w(k, l);
        let gamma1 = weights::gamma1();
        for j in 0..=k {
            let wj = w(k - j, l + j);
            let lhs = v.act(&self.x1, &wj);
            let rhs = scaled(Q::new(j + l, 2), w(k - j + 1, l + j - 1));
            if lhs != rhs {
                raise.push(j);
            }
            let lhs = v.act(&self.xm1, &wj);
            let c = Q::new(2 * (j + 1) * (k - j), l + j + 1);
            if lhs != scaled(c, w(k - j - 1, l + j + 1)) {
                lower.push(j);
            }
            let lhs = v.act_pow(&self.xm1, j as u32, &u);
            let c = &(&Q::from_int(2).pow(j as u32) * &factorial(j as u64)) * &(&binomial(k, j) / &binomial(l + j, l));
            if lhs != scaled(c, wj.clone()) {
                power.push(j);
            }
            let mu: Weight = label.xi().iter().zip(&gamma1).map(|(a, g)| a - &(&Q::from_int(j) * g)).collect();
            if !self.has_weight(v, &wj, &mu) {
                weight.push(j);
            }
        }
        let rank = rank_of((0..=k).map(|j| w(k - j, l + j)));
        vec![
            Check::with(format!("{tag}.raise"), "X1 X_delta^{k-j} E^{l+j} v = ((j+l)/2) X_delta^{k-j+1} E^{l+j-1} v", raise.is_empty(), || format!("j in {raise:?}")),
            Check::with(format!("{tag}.lower"), "X-1 X_delta^{k-j} E^{l+j} v = (2(j+1)(k-j)/(l+j+1)) X_delta^{k-j-1} E^{l+j+1} v", lower.is_empty(), || format!("j in {lower:?}")),
            Check::with(format!("{tag}.power"), "X-1^j u = 2^j j! C(k,j) / C(l+j,l) X_delta^{k-j} E^{l+j} v", power.is_empty(), || format!("j in {power:?}")),
            Check::with(format!("{tag}.weights"), "X_delta^{k-j} E^{l+j} v has weight xi - j gamma1", weight.is_empty(), || format!("j in {weight:?}")),
            Check::eq(format!("{tag}.independent"), "the k+1 ladder vectors are independent", rank, label.k as usize + 1),
        ]
    }

    /// `(xi, xi + 2 rho)` for the form dual to the Killing form of `k`:
    /// the scalar by which the Casimir of `k` acts on `V_xi`.
    pub fn casimir_value(&self, xi: &[Q]) -> Q {
        let rho = self.backend.rho();
        let shifted: Vq = xi.iter().zip(&rho).map(|(a, r)| a + &(&Q::from_int(2) * r)).collect();
        dot(xi, &self.dual_form.apply(&shifted))
    }

    /// The Casimir element of `k` acting on `U(k)` through `ad`.
    pub fn casimir_ad(&self, u: &Uea) -> Uea {
        let uk = self.wb.uk();
        let n = self.wb.model.dim_k();
        let first: Vec<Uea> = (0..n).map(|b| uk.ad_gen(b, u)).collect();
        let mut out = Uea::zero();
        for a in 0..n {
            let mut inner = Uea::zero();
            for (b, w) in first.iter().enumerate() {
                let c = &self.kinv[(a, b)];
                if !c.is_zero() {
                    inner.axpy(c, w);
                }
            }
            if !inner.is_zero() {
                out.axpy(&Q::one(), &uk.ad_gen(a, &inner));
            }
        }
        out
    }

    pub fn is_m_invariant(&self, u: &Uea) -> bool {
        let uk = self.wb.uk();
        self.wb.model.m_basis().iter().all(|x| uk.ad(x, u).is_zero())
    }

    /// Labels whose highest weight can occur in `U_r(k)`: `(xi, rho) <= r (theta, rho)`
    /// for the highest root `theta` of `k`.
    pub fn candidate_labels(&self, r: u32) -> Vec<KTypeLabel> {
        let rho = self.backend.rho();
        let top = self.backend.positive.iter().map(|a| dot(a, &rho)).max().unwrap_or_else(Q::zero);
        let bound = &Q::from_int(i64::from(r)) * &top;
        let mut out = Vec::new();
        for k in 0.. {
            if dot(&KTypeLabel::new(k, 0).xi(), &rho) > bound {
                break;
            }
            for l in 0.. {
                let lab = KTypeLabel::new(k, l);
                if dot(&lab.xi(), &rho) > bound {
                    break;
                }
                out.push(lab);
            }
        }
        out
    }

    /// Decomposes an `m`-invariant `u` into `k`-isotypic components and reads
    /// off the labels present.
    pub fn kostant(&self, u: &Uea) -> Result<KostantDecomposition, RepthError> {
        if !self.is_m_invariant(u) {
            return Err(RepthError::NotMInvariant);
        }
        let Some(r) = u.degree() else {
            return Ok(KostantDecomposition { labels: Vec::new(), degree: None, components: Vec::new() });
        };
        if r > self.degree_cap {
            return Err(RepthError::DegreeTooLarge { degree: r, cap: self.degree_cap });
        }
        let mut by_value: BTreeMap<Q, Vec<KTypeLabel>> = BTreeMap::new();
        for lab in self.candidate_labels(r) {
            by_value.entry(self.casimir_value(&lab.xi())).or_default().push(lab);
        }
        let mut components = Vec::new();
        for (eigenvalue, part) in spectral_parts(u, |x| self.casimir_ad(x))? {
            let cands = by_value.get(&eigenvalue).ok_or_else(|| RepthError::UnknownEigenvalue(eigenvalue.to_string()))?;
            let labels = if cands.len() == 1 {
                cands.clone()
            } else {
                let mut found = Vec::new();
                for &lab in cands {
                    if self.detects(lab, cands, &part)? {
                        found.push(lab);
                    }
                }
                found
            };
            components.push(IsotypicPart { eigenvalue, labels, part });
        }
        let mut labels: Vec<KTypeLabel> = components.iter().flat_map(|c| c.labels.iter().copied()).collect();
        labels.sort();
        let degree = labels.iter().map(KTypeLabel::degree).max();
        Ok(KostantDecomposition { labels, degree, components })
    }

    /// Whether the component of `lab` in `part` (a sum over `cands`) is
    /// nonzero. The weight-`xi` part of `X_delta^k E^l (part)` only sees
    /// `lab`: every other label either is killed by `X_delta^k E^l` or lacks
    /// the weight `xi` altogether.
    fn detects(&self, lab: KTypeLabel, cands: &[KTypeLabel], part: &Uea) -> Result<bool, RepthError> {
        let xi = lab.xi();
        for other in cands.iter().filter(|o| **o != lab) {
            let killed = lab.k > other.k || lab.k + lab.l > other.k + other.l;
            let diff: Vq = other.xi().iter().zip(&xi).map(|(a, b)| a - b).collect();
            if !killed && self.in_positive_cone(&diff) {
                let names: Vec<String> = cands.iter().map(ToString::to_string).collect();
                return Err(RepthError::Unresolved(names.join(" ")));
            }
        }
        let uk = self.wb.uk();
        let w = uk.ad_pow(&self.xdelta, lab.k, &uk.ad_pow(&self.e, lab.l, part));
        if w.is_zero() {
            return Ok(false);
        }
        let parts = spectral_parts(&w, |x| uk.ad(&self.t1, x))?;
        Ok(parts.iter().any(|(l, p)| *l == xi[0] && !p.is_zero()))
    }

    pub fn kostant_degree(&self, u: &Uea) -> Result<Option<u32>, RepthError> {
        Ok(self.kostant(u)?.degree)
    }
}

/// Splits `u` along the eigenvalues of a diagonalizable operator, using the
/// minimal polynomial of `op` on the cyclic subspace generated by `u`.
pub fn spectral_parts(u: &Uea, op: impl Fn(&Uea) -> Uea) -> Result<Vec<(Q, Uea)>, RepthError> {
    if u.is_zero() {
        return Ok(Vec::new());
    }
    let mut idx = MonoIndex::default();
    let mut ech = Echelon::new();
    let mut krylov = vec![u.clone()];
    let relation = loop {
        let last = krylov.last().unwrap();
        if let Some(dep) = ech.insert(idx.encode(last, 0, 0)) {
            break dep;
        }
        let next = op(last);
        krylov.push(next);
    };
    let d = krylov.len() - 1;
    let coeffs: Vq = (0..=d).map(|i| relation.get(&i).cloned().unwrap_or_else(Q::zero)).collect();
    let minpoly = Poly::new(coeffs);
    let split = split_linear(&minpoly).ok_or_else(|| RepthError::Construction("eigenvalues are not rational".into()))?;
    if split.roots.iter().any(|(_, m)| *m > 1) {
        return Err(RepthError::Construction("operator is not semisimple on this element".into()));
    }
    let roots: Vq = split.roots.iter().map(|(r, _)| r.clone()).collect();
    let mut out = Vec::new();
    for lambda in &roots {
        let mut q = Poly::constant(Q::one());
        for mu in roots.iter().filter(|m| *m != lambda) {
            let inv = (lambda - mu).recip().unwrap();
            q = &q * &Poly::new(vec![-&(mu * &inv), inv]);
        }
        let mut part = Uea::zero();
        for (i, c) in q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                part.axpy(c, &krylov[i]);
            }
        }
        out.push((lambda.clone(), part));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests;
