//! Irreducible highest-weight modules of a semisimple Lie algebra, built
//! weight space by weight space as the quotient of the Verma module by the
//! radical of its contravariant form.
//!
//! A vector of weight `mu` in the Verma quotient is zero exactly when every
//! raising operator `e_j` kills it. Each weight space is therefore spanned by
//! the candidates `f_i w` (for `w` in the space of `mu + alpha_i`), modulo the
//! combinations whose `e_j` images all vanish. Those images are computed from
//! already-built spaces through `e_j f_i = f_i e_j + delta_ij h_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::RepthError;
use crate::exactnum::sparse::{axpy, to_sparse, Echelon, SparseVec};
use crate::exactnum::Rational;
use crate::liealg::LieAlgebra;
use crate::rootdata::dot;
use crate::rootdata::f4::Weight;

type Q = Rational;
type Vq = Vec<Q>;

/// Sparse square matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMat {
    pub cols: Vec<SparseVec<Q>>,
}

impl SpMat {
    pub fn zero(n: usize) -> Self {
        SpMat { cols: vec![SparseVec::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec<Q>) -> SparseVec<Q> {
        let mut out = SparseVec::new();
        for (k, c) in v {
            axpy(&mut out, c, &self.cols[*k]);
        }
        out
    }

    pub fn mul(&self, other: &SpMat) -> SpMat {
        SpMat { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn axpy(&mut self, c: &Q, other: &SpMat) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            axpy(a, c, b);
        }
    }

    pub fn commutator(&self, other: &SpMat) -> SpMat {
        let mut out = self.mul(other);
        out.axpy(&-Q::one(), &other.mul(self));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::len).sum()
    }
}

/// A simple root with root vectors normalized so that `[e, f]` is the coroot.
#[derive(Clone, Debug)]
pub struct SimpleRoot {
    pub alpha: Weight,
    pub e: Vq,
    pub f: Vq,
    /// `<mu, alpha^vee> = sum_j coroot[j] mu_j`.
    pub coroot: Vq,
}

/// The data needed to build modules: an algebra, an ordered Cartan basis
/// (weights are recorded by their values on it) and a simple system.
#[derive(Clone, Debug)]
pub struct Backend<'a> {
    pub alg: &'a LieAlgebra<Q>,
    pub cartan: Vec<Vq>,
    pub simple: Vec<SimpleRoot>,
    /// Positive roots, used by the dimension formula. Weight coordinates
    /// must be orthonormal for an invariant form.
    pub positive: Vec<Weight>,
}

impl<'a> Backend<'a> {
    pub fn new(alg: &'a LieAlgebra<Q>, cartan: Vec<Vq>, simple: Vec<(Weight, Vq, Vq)>, positive: Vec<Weight>) -> Result<Self, RepthError> {
        let bad = |s: &str| RepthError::Construction(s.to_string());
        let mut roots = Vec::new();
        for (alpha, e, f) in simple {
            let h = alg.bracket(&e, &f);
            let coroot = LieAlgebra::coordinates(&cartan, &h).ok_or_else(|| bad("[e,f] is not in the Cartan subalgebra"))?;
            for (j, t) in cartan.iter().enumerate() {
                let want: Vq = e.iter().map(|x| x * &alpha[j]).collect();
                if alg.bracket(t, &e) != want {
                    return Err(bad("root vector is not a weight vector for its root"));
                }
            }
            let pair: Q = coroot.iter().zip(&alpha).fold(Q::zero(), |acc, (c, a)| acc + c * a);
            if pair != Q::from_int(2) {
                return Err(bad("simple root does not pair to 2 with its coroot"));
            }
            roots.push(SimpleRoot { alpha, e, f, coroot });
        }
        Ok(Backend { alg, cartan, simple: roots, positive })
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn pairing(&self, mu: &[Q], i: usize) -> Q {
        self.simple[i].coroot.iter().zip(mu).fold(Q::zero(), |acc, (c, m)| acc + c * m)
    }

    pub fn is_dominant_integral(&self, mu: &[Q]) -> bool {
        (0..self.rank()).all(|i| {
            let p = self.pairing(mu, i);
            p.is_integer() && !p.is_negative()
        })
    }

    pub fn rho(&self) -> Weight {
        let mut r = vec![Q::zero(); self.cartan.len()];
        for a in &self.positive {
            for (x, y) in r.iter_mut().zip(a) {
                *x += &(y * &Q::new(1, 2));
            }
        }
        r
    }

    /// `prod_{alpha > 0} (xi + rho, alpha) / (rho, alpha)`.
    pub fn weyl_dimension(&self, xi: &[Q]) -> Q {
        let rho = self.rho();
        let shifted: Weight = xi.iter().zip(&rho).map(|(a, b)| a + b).collect();
        self.positive.iter().fold(Q::one(), |acc, a| &(&acc * &dot(&shifted, a)) / &dot(&rho, a))
    }

    /// The simple reflection `s_i`.
    pub fn reflect(&self, mu: &[Q], i: usize) -> Weight {
        let p = self.pairing(mu, i);
        mu.iter().zip(&self.simple[i].alpha).map(|(m, a)| m - &(&p * a)).collect()
    }
}

/// Order in which simple roots are scanned during construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    Forward,
    Reverse,
}

/// A finite-dimensional irreducible module with exact action matrices for
/// every basis element of the algebra.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub highest: Weight,
    /// Weight of each basis vector; basis vector 0 is the highest one.
    pub weights: Vec<Weight>,
    /// Action matrix of each algebra basis element.
    pub actions: Vec<SpMat>,
    pub raising: Vec<SpMat>,
    pub lowering: Vec<SpMat>,
}

struct Space {
    weight: Weight,
    dim: usize,
    /// `e[j][b]`: image of basis vector `b` in the space of `weight + alpha_j`.
    e: Vec<Vec<SparseVec<Q>>>,
    /// `f[i][b]`: image in the space of `weight - alpha_i`; empty when zero.
    f: Vec<Vec<SparseVec<Q>>>,
}

const STRIDE: usize = 1 << 32;

fn shifted(mu: &[Q], a: &[Q], sign: i64) -> Weight {
    let s = Q::from_int(sign);
    mu.iter().zip(a).map(|(m, x)| m + &(&s * x)).collect()
}

pub fn build_irrep(b: &Backend, xi: &[Q], cap: usize, order: ScanOrder) -> Result<Irrep, RepthError> {
    if !b.is_dominant_integral(xi) {
        return Err(RepthError::NotDominant(super::fmt_weight(xi)));
    }
    let predicted = b.weyl_dimension(xi);
    if predicted > Q::from_int(cap as i64) {
        return Err(RepthError::TooLarge { predicted: predicted.to_string(), cap });
    }
    let n = b.rank();
    let scan: Vec<usize> = match order {
        ScanOrder::Forward => (0..n).collect(),
        ScanOrder::Reverse => (0..n).rev().collect(),
    };
    let mut spaces: Vec<Space> = vec![Space { weight: xi.to_vec(), dim: 1, e: vec![vec![SparseVec::new()]; n], f: vec![Vec::new(); n] }];
    let mut index: BTreeMap<Weight, usize> = BTreeMap::from([(xi.to_vec(), 0)]);
    let mut frontier = vec![0usize];
    let mut total = 1usize;
    while !frontier.is_empty() {
        let mut targets: BTreeSet<Weight> = BTreeSet::new();
        for &s in &frontier {
            for &i in &scan {
                targets.insert(shifted(&spaces[s].weight, &b.simple[i].alpha, -1));
            }
        }
        let mut next = Vec::new();
        for mu in targets {
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for &i in &scan {
                if let Some(&src) = index.get(&shifted(&mu, &b.simple[i].alpha, 1)) {
                    cands.extend((0..spaces[src].dim).map(|k| (i, src, k)));
                }
            }
            let images: Vec<SparseVec<Q>> = cands.iter().map(|&(i, src, k)| raise_candidate(b, &spaces, &index, i, src, k)).collect();
            let mut ech = Echelon::new();
            let mut chosen: Vec<usize> = Vec::new();
            let mut deps: Vec<Option<SparseVec<Q>>> = Vec::new();
            for img in &images {
                match ech.insert(img.clone()) {
                    None => {
                        chosen.push(deps.len());
                        deps.push(None);
                    }
                    Some(d) => deps.push(Some(d)),
                }
            }
            if chosen.is_empty() {
                continue;
            }
            let pos_of: BTreeMap<usize, usize> = chosen.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            let dim = chosen.len();
            total += dim;
            if total > cap {
                return Err(RepthError::TooLarge { predicted: predicted.to_string(), cap });
            }
            let mut e = vec![vec![SparseVec::new(); dim]; n];
            for (p, &c) in chosen.iter().enumerate() {
                for (key, val) in &images[c] {
                    e[key / STRIDE][p].insert(key % STRIDE, val.clone());
                }
            }
            let me = spaces.len();
            for (c, &(i, src, k)) in cands.iter().enumerate() {
                let col: SparseVec<Q> = match &deps[c] {
                    None => SparseVec::from([(pos_of[&c], Q::one())]),
                    // dep = 1 * self + sum d_t * other_t = 0
                    Some(d) => d.iter().filter(|(t, _)| **t != c).map(|(t, x)| (pos_of[t], -x.clone())).collect(),
                };
                let sdim = spaces[src].dim;
                let fm = &mut spaces[src].f[i];
                if fm.is_empty() {
                    *fm = vec![SparseVec::new(); sdim];
                }
                fm[k] = col;
            }
            index.insert(mu.clone(), me);
            spaces.push(Space { weight: mu, dim, e, f: vec![Vec::new(); n] });
            next.push(me);
        }
        frontier = next;
    }
    assemble(b, &spaces, &index, xi)
}

/// Concatenated images `e_j (f_i w_k)` over `j`, with block offsets.
fn raise_candidate(b: &Backend, spaces: &[Space], index: &BTreeMap<Weight, usize>, i: usize, src: usize, k: usize) -> SparseVec<Q> {
    let nu = &spaces[src].weight;
    let mut out = SparseVec::new();
    for j in 0..b.rank() {
        let mut img = SparseVec::new();
        if let Some(&up) = index.get(&shifted(nu, &b.simple[j].alpha, 1)) {
            let ej = &spaces[src].e[j][k];
            let fi = &spaces[up].f[i];
            if !fi.is_empty() {
                for (t, c) in ej {
                    axpy(&mut img, c, &fi[*t]);
                }
            }
        }
        if i == j {
            axpy(&mut img, &b.pairing(nu, i), &SparseVec::from([(k, Q::one())]));
        }
        out.extend(img.into_iter().map(|(t, c)| (j * STRIDE + t, c)));
    }
    out
}

fn assemble(b: &Backend, spaces: &[Space], index: &BTreeMap<Weight, usize>, xi: &[Q]) -> Result<Irrep, RepthError> {
    let n = b.rank();
    let mut offset = Vec::with_capacity(spaces.len());
    let mut weights = Vec::new();
    for s in spaces {
        offset.push(weights.len());
        weights.extend(std::iter::repeat(s.weight.clone()).take(s.dim));
    }
    let dim = weights.len();
    let mut raising = vec![SpMat::zero(dim); n];
    let mut lowering = vec![SpMat::zero(dim); n];
    for (s, sp) in spaces.iter().enumerate() {
        for j in 0..n {
            let up = index.get(&shifted(&sp.weight, &b.simple[j].alpha, 1));
            let down = index.get(&shifted(&sp.weight, &b.simple[j].alpha, -1));
            for k in 0..sp.dim {
                if let Some(&u) = up {
                    raising[j].cols[offset[s] + k] = sp.e[j][k].iter().map(|(t, c)| (offset[u] + t, c.clone())).collect();
                }
                if let (Some(&d), false) = (down, sp.f[j].is_empty()) {
                    lowering[j].cols[offset[s] + k] = sp.f[j][k].iter().map(|(t, c)| (offset[d] + t, c.clone())).collect();
                }
            }
        }
    }
    let actions = full_action(b, &raising, &lowering)?;
    Ok(Irrep { highest: xi.to_vec(), weights, actions, raising, lowering })
}

/// Actions of all basis elements, generated from `e_i, f_i` by brackets.
fn full_action(b: &Backend, raising: &[SpMat], lowering: &[SpMat]) -> Result<Vec<SpMat>, RepthError> {
    let gens: Vec<(Vq, SpMat)> = b
        .simple
        .iter()
        .zip(raising)
        .map(|(s, m)| (s.e.clone(), m.clone()))
        .chain(b.simple.iter().zip(lowering).map(|(s, m)| (s.f.clone(), m.clone())))
        .collect();
    let mut ech = Echelon::new();
    let mut elems: Vec<(Vq, SpMat)> = Vec::new();
    let try_push = |v: Vq, m: SpMat, ech: &mut Echelon<Q>, elems: &mut Vec<(Vq, SpMat)>| {
        let sv = to_sparse(&v);
        if !sv.is_empty() && !ech.contains(&sv) {
            ech.insert(sv);
            elems.push((v, m));
        }
    };
    for (v, m) in &gens {
        try_push(v.clone(), m.clone(), &mut ech, &mut elems);
    }
    let dim = b.alg.dim();
    let mut i = 0;
    while i < elems.len() && ech.rank() < dim {
        for (gv, gm) in &gens {
            let v = b.alg.bracket(gv, &elems[i].0);
            let sv = to_sparse(&v);
            if !sv.is_empty() && !ech.contains(&sv) {
                let m = gm.commutator(&elems[i].1);
                try_push(v, m, &mut ech, &mut elems);
            }
        }
        i += 1;
    }
    if ech.rank() < dim {
        return Err(RepthError::Construction("simple root vectors do not generate the algebra".into()));
    }
    let n = raising.first().map_or(1, SpMat::dim);
    (0..dim)
        .map(|k| {
            let coords = ech.express(&SparseVec::from([(k, Q::one())])).expect("spanning set");
            let mut m = SpMat::zero(n);
            for (t, c) in coords {
                m.axpy(&c, &elems[t].1);
            }
            Ok(m)
        })
        .collect()
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Action of a Lie algebra element given in basis coordinates.
    pub fn act(&self, x: &[Q], v: &SparseVec<Q>) -> SparseVec<Q> {
        let mut out = SparseVec::new();
        for (c, m) in x.iter().zip(&self.actions) {
            if !c.is_zero() {
                axpy(&mut out, c, &m.apply(v));
            }
        }
        out
    }

    pub fn act_pow(&self, x: &[Q], p: u32, v: &SparseVec<Q>) -> SparseVec<Q> {
        (0..p).fold(v.clone(), |acc, _| self.act(x, &acc))
    }

    /// First basis pair `(a, b)` with `[rho(x_a), rho(x_b)] != rho([x_a, x_b])`.
    pub fn bracket_defect(&self, alg: &LieAlgebra<Q>) -> Option<(usize, usize)> {
        let n = alg.dim();
        for a in 0..n {
            for bb in a + 1..n {
                let lhs = self.actions[a].commutator(&self.actions[bb]);
                let mut rhs = SpMat::zero(self.dim());
                for (c, x) in alg.bracket_basis(a, bb) {
                    rhs.axpy(x, &self.actions[*c]);
                }
                if lhs != rhs {
                    return Some((a, bb));
                }
            }
        }
        None
    }

    /// Whether each Cartan basis element acts diagonally by the recorded weights.
    pub fn cartan_diagonal(&self, b: &Backend) -> bool {
        b.cartan.iter().enumerate().all(|(j, t)| {
            (0..self.dim()).all(|k| {
                let img = self.act(t, &SparseVec::from([(k, Q::one())]));
                let want = &self.weights[k][j];
                if want.is_zero() {
                    img.is_empty()
                } else {
                    img.len() == 1 && img.get(&k) == Some(want)
                }
            })
        })
    }

    /// Vectors of weight `mu`, as basis indices.
    pub fn weight_indices(&self, mu: &[Q]) -> Vec<usize> {
        self.weights.iter().enumerate().filter(|(_, w)| w.as_slice() == mu).map(|(i, _)| i).collect()
    }
}
