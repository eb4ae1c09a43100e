//! The explicit model of F4 used throughout: Cartan involution, Cayley
//! transform, compact root vectors and the distinguished elements with their
//! normalizations.
//!
//! Vectors of `g` are coordinate vectors in the Chevalley basis; vectors of
//! `k` are coordinate vectors in the ordered basis [`F4Model::k_labels`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactnum::sparse::to_sparse;
use crate::exactnum::{Echelon, Field, Matrix, QSqrt2, Rational};
use crate::rootdata::f4::{self, weights, Weight};
use crate::rootdata::RootSystem;

use super::{add_vec, form, ratio, scale_vec, sub_vec, unit, Chevalley, LieAlgebra, LieError};

type Q = Rational;
type Vq = Vec<Rational>;

fn to_s(v: &[Q]) -> Vec<QSqrt2> {
    v.iter().map(|x| QSqrt2::from(x.clone())).collect()
}

fn to_q(v: &[QSqrt2]) -> Option<Vq> {
    v.iter().map(|x| x.to_rational()).collect()
}

fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn neg_w(v: &[Q]) -> Weight {
    v.iter().map(|x| -x.clone()).collect()
}

fn fmt_w(v: &[Q]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// `exp` of a nilpotent matrix.
fn exp_nilpotent(m: &Matrix<Q>) -> Matrix<Q> {
    let n = m.nrows();
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=2 * n {
        term = (&term * m).scale(&Q::new(1, k as i64));
        if term.is_zero() {
            return acc;
        }
        acc = &acc + &term;
    }
    panic!("matrix is not nilpotent");
}

fn cos_sin_quarter_pi(k: i64) -> (QSqrt2, QSqrt2) {
    let h = QSqrt2::new(Q::ZERO, Q::new(1, 2));
    let z = QSqrt2::zero();
    let o = QSqrt2::one();
    match k.rem_euclid(8) {
        0 => (o, z),
        1 => (h.clone(), h),
        2 => (z, o),
        3 => (-h.clone(), h),
        4 => (-o, z),
        5 => (-h.clone(), -h),
        6 => (z, -o),
        _ => (h.clone(), -h),
    }
}

/// Coefficients `a_0..a_{2r}` of the polynomial `p` with
/// `p(i s) = exp(i s pi/4)` for `s` in `{0, +-s_1, .., +-s_r}`.
pub fn cayley_interpolation(spectrum: &[i64]) -> Vec<QSqrt2> {
    let deg = 2 * spectrum.len();
    let mut rows: Vec<Vec<QSqrt2>> = Vec::new();
    let mut rhs = Vec::new();
    let mut r0 = vec![QSqrt2::zero(); deg + 1];
    r0[0] = QSqrt2::one();
    rows.push(r0);
    rhs.push(QSqrt2::one());
    for &s in spectrum {
        let (c, sn) = cos_sin_quarter_pi(s);
        let mut re = vec![QSqrt2::zero(); deg + 1];
        let mut im = vec![QSqrt2::zero(); deg + 1];
        for (k, (re_k, im_k)) in re.iter_mut().zip(im.iter_mut()).enumerate() {
            let sk = QSqrt2::from(s.pow(k as u32));
            if k % 2 == 0 {
                let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                *re_k = sk * QSqrt2::from(sign);
            } else {
                let sign = if ((k - 1) / 2) % 2 == 0 { 1 } else { -1 };
                *im_k = sk * QSqrt2::from(sign);
            }
        }
        rows.push(re);
        rhs.push(c);
        rows.push(im);
        rhs.push(sn);
    }
    Matrix::from_rows(rows).solve(&rhs).expect("interpolation system is solvable")
}

#[derive(Debug, Clone, Serialize)]
pub struct KLabel {
    pub name: String,
    /// Compact weight in `e~` coordinates, when the basis vector is a weight vector.
    pub weight: Option<Weight>,
    /// Weight for the Cartan subalgebra of `m` (the last three coordinates).
    pub t_weight: Weight,
}

/// The model and all derived data.
#[derive(Clone, Debug)]
pub struct F4Model {
    pub ch: Chevalley,
    pub theta: Matrix<Q>,
    /// Torus twist `y` in `theta = Ad(n_mu) Ad(exp(i pi y))`.
    pub theta_twist: Vec<i64>,
    pub x_mu: Vq,
    pub cayley_coeffs: Vec<QSqrt2>,
    pub cayley: Matrix<QSqrt2>,
    pub killing_g: Matrix<Q>,
    /// Basis of `k` in Chevalley coordinates, in the global order.
    pub k_vectors: Vec<Vq>,
    pub k_labels: Vec<KLabel>,
    pub k: LieAlgebra<Q>,
    /// Restriction of the Killing form of `g` to `k`, in the `k` basis.
    pub killing_k: Matrix<Q>,
    /// `g` in the Iwasawa basis: the `k` basis, then `Z`, then `n`.
    pub g: LieAlgebra<Q>,
    pub g_vectors: Vec<Vq>,
    pub n_roots: Vec<Weight>,
    /// First index of the `m+` labels (an ideal suffix of the order).
    pub mplus_start: usize,
    /// First index of the `y` labels.
    pub y_start: usize,
    named: BTreeMap<String, Vq>,
    root_vectors: BTreeMap<String, Vq>,
    k_echelon: Echelon<Q>,
}

impl F4Model {
    pub fn build() -> Result<Self, LieError> {
        Builder::new().build()
    }

    pub fn dim_k(&self) -> usize {
        self.k_vectors.len()
    }

    /// Named element in `k` coordinates.
    pub fn el(&self, name: &str) -> Vq {
        self.named.get(name).cloned().unwrap_or_else(|| panic!("unknown element {name}"))
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.named.keys()
    }

    /// Root vector of a compact root, in `k` coordinates.
    pub fn root_vector(&self, w: &[Q]) -> Vq {
        self.root_vectors.get(&fmt_w(w)).cloned().unwrap_or_else(|| panic!("not a compact root {}", fmt_w(w)))
    }

    pub fn compact_roots(&self) -> Vec<Weight> {
        f4::compact_roots(&self.ch.rs)
    }

    pub fn positive_compact(&self) -> Vec<Weight> {
        f4::positive_compact(&self.ch.rs)
    }

    pub fn simple_compact(&self) -> Vec<Weight> {
        f4::simple_compact(&self.ch.rs)
    }

    /// Element of the compact Cartan subalgebra with `e~` values `v`, in `k` coordinates.
    pub fn hk(&self, v: &[Q]) -> Vq {
        (0..4).fold(vec![Q::ZERO; self.dim_k()], |acc, i| add_vec(&acc, &scale_vec(&self.el(&format!("t{}", i + 1)), &v[i])))
    }

    /// Coroot in the compact Cartan subalgebra.
    pub fn coroot_k(&self, w: &[Q]) -> Vq {
        let n2 = crate::rootdata::dot(w, w);
        self.hk(&w.iter().map(|x| &(&Q::from_int(2) * x) / &n2).collect::<Vec<_>>())
    }

    /// Chevalley coordinates of a `k` vector.
    pub fn k_to_g(&self, v: &[Q]) -> Vq {
        let mut out = vec![Q::ZERO; self.ch.dim()];
        for (c, b) in v.iter().zip(&self.k_vectors) {
            if !c.is_zero() {
                out = add_vec(&out, &scale_vec(b, c));
            }
        }
        out
    }

    /// `k` coordinates of a Chevalley vector lying in `k`.
    pub fn g_to_k(&self, v: &[Q]) -> Option<Vq> {
        self.k_echelon.express(&to_sparse(v)).map(|c| crate::exactnum::sparse::to_dense(&c, self.dim_k()))
    }

    pub fn bracket_k(&self, x: &[Q], y: &[Q]) -> Vq {
        self.k.bracket(x, y)
    }

    pub fn kappa_k(&self, x: &[Q], y: &[Q]) -> Q {
        form(&self.killing_k, x, y)
    }

    /// Evaluates a compact weight on an element of the compact Cartan
    /// subalgebra given in `k` coordinates.
    pub fn eval_weight(&self, w: &[Q], h: &[Q]) -> Q {
        (0..4).fold(Q::ZERO, |acc, i| acc + &w[i] * &h[self.t_index(i)])
    }

    fn t_index(&self, i: usize) -> usize {
        self.k_labels.iter().position(|l| l.name == format!("t{}", i + 1)).unwrap()
    }

    /// Basis vectors (in `k` coordinates) of `m+`.
    pub fn mplus(&self) -> Vec<Vq> {
        (self.mplus_start..self.dim_k()).map(|i| unit(self.dim_k(), i)).collect()
    }

    pub fn y_space(&self) -> Vec<Vq> {
        (self.y_start..self.dim_k()).map(|i| unit(self.dim_k(), i)).collect()
    }

    /// Basis of `m`: its Cartan subalgebra and root vectors of `+-P-`.
    pub fn m_basis(&self) -> Vec<Vq> {
        let mut out: Vec<Vq> = (2..=4).map(|i| self.el(&format!("t{i}"))).collect();
        for r in f4::p_minus(&self.ch.rs) {
            out.push(self.g_to_k(&unit(self.ch.dim(), self.ch.e(&self.ch.rs.coeffs_of(&r).unwrap()))).unwrap());
            let nr = neg_w(&r);
            out.push(self.g_to_k(&unit(self.ch.dim(), self.ch.e(&self.ch.rs.coeffs_of(&nr).unwrap()))).unwrap());
        }
        out
    }

    /// Simple root vectors `e_i, f_i` of `m` (type B3).
    pub fn m_simple(&self) -> Vec<(Vq, Vq)> {
        let rs = &self.ch.rs;
        f4::simple_roots()[1..]
            .iter()
            .map(|r| {
                let e = self.g_to_k(&unit(self.ch.dim(), self.ch.e(&rs.coeffs_of(r).unwrap()))).unwrap();
                let f = self.g_to_k(&unit(self.ch.dim(), self.ch.e(&rs.coeffs_of(&neg_w(r)).unwrap()))).unwrap();
                (e, f)
            })
            .collect()
    }

    /// Positive and negative simple root vectors of `k`, normalized so that
    /// `[e_i, f_i]` is the coroot.
    pub fn k_simple(&self) -> Vec<(Weight, Vq, Vq)> {
        self.simple_compact()
            .into_iter()
            .map(|a| {
                let e = self.root_vector(&a);
                let f0 = self.root_vector(&neg_w(&a));
                let h = self.coroot_k(&a);
                let c = ratio(&h, &self.bracket_k(&e, &f0)).expect("coroot");
                (a, e, scale_vec(&f0, &c))
            })
            .collect()
    }

    /// Positive root vectors of `k` (a basis of `k+`).
    pub fn k_plus(&self) -> Vec<Vq> {
        self.positive_compact().iter().map(|w| self.root_vector(w)).collect()
    }

    pub fn k_minus(&self) -> Vec<Vq> {
        self.positive_compact().iter().map(|w| self.root_vector(&neg_w(w))).collect()
    }

    pub fn h_k(&self) -> Vec<Vq> {
        (1..=4).map(|i| self.el(&format!("t{i}"))).collect()
    }

    /// Noncompact root vectors (a basis of `p`) in Chevalley coordinates.
    pub fn p_basis(&self) -> Vec<Vq> {
        let mut out = Vec::new();
        for w in f4::noncompact_roots(&self.ch.rs) {
            let x = self.cayley.apply(&to_s(&unit(self.ch.dim(), self.ch.e(&self.ch.rs.coeffs_of(&w).unwrap()))));
            out.push(rationalize(&x).expect("rational noncompact vector"));
        }
        out
    }
}

/// Drops a common factor of `sqrt 2` when every coordinate is a pure surd.
fn rationalize(v: &[QSqrt2]) -> Option<Vq> {
    if let Some(q) = to_q(v) {
        return Some(q);
    }
    if v.iter().all(|x| x.a.is_zero()) {
        return Some(v.iter().map(|x| x.b.clone()).collect());
    }
    None
}

struct Builder {
    ch: Chevalley,
    alg_s: LieAlgebra<QSqrt2>,
    dim: usize,
}

impl Builder {
    fn new() -> Self {
        let ch = Chevalley::new(f4::f4());
        let alg_s = ch.alg.map_field(|x| QSqrt2::from(x.clone()));
        let dim = ch.dim();
        Builder { ch, alg_s, dim }
    }

    fn rs(&self) -> &RootSystem {
        &self.ch.rs
    }

    fn e(&self, w: &[Q]) -> Vq {
        unit(self.dim, self.ch.e(&self.rs().coeffs_of(w).expect("root")))
    }

    /// Element of `h` with `e` values `v`.
    fn h_of(&self, v: &[Q]) -> Vq {
        let simple = f4::simple_roots();
        let cols: Vec<Vq> = simple
            .iter()
            .map(|a| {
                let n2 = crate::rootdata::dot(a, a);
                a.iter().map(|x| &(&Q::from_int(2) * x) / &n2).collect()
            })
            .collect();
        let m = Matrix::from_cols(&cols, 4);
        let c = m.solve(v).expect("h coordinates");
        let mut out = vec![Q::ZERO; self.dim];
        out[..4].clone_from_slice(&c);
        out
    }

    fn theta_candidate(&self, y: &[i64]) -> Option<Matrix<Q>> {
        let alg = &self.ch.alg;
        let mu = f4::w([1, 0, 0, 0], 1);
        let ad_e = alg.ad(&self.e(&mu));
        let ad_f = alg.ad(&self.e(&neg_w(&mu)));
        let ad_n = &(&exp_nilpotent(&ad_e) * &exp_nilpotent(&ad_f.scale(&-Q::ONE))) * &exp_nilpotent(&ad_e);
        let mut t = Matrix::identity(self.dim);
        let yq: Vq = y.iter().map(|&x| Q::from_int(x)).collect();
        for w in f4::all_roots(self.rs()) {
            let p = crate::rootdata::dot(&w, &yq);
            let p = p.to_i64()?;
            let i = self.ch.e(&self.rs().coeffs_of(&w).unwrap());
            if p.rem_euclid(2) == 1 {
                t[(i, i)] = -Q::ONE;
            }
        }
        let theta = &ad_n * &t;
        if &theta * &theta != Matrix::identity(self.dim) {
            return None;
        }
        let fixed = self.dim - (&theta - &Matrix::identity(self.dim)).rank();
        if fixed != 36 {
            return None;
        }
        // automorphism check
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = theta.apply(&alg.bracket(&unit(self.dim, i), &unit(self.dim, j)));
                let rhs = alg.bracket(&theta.col(i), &theta.col(j));
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(theta)
    }

    fn build(self) -> Result<F4Model, LieError> {
        let dim = self.dim;
        let rs = self.rs().clone();
        let err = |s: &str| LieError::Model(s.to_string());

        // Cartan involution
        let mut candidates: Vec<Vec<i64>> = vec![vec![1, 1, 1, 1]];
        for a in -1..=2 {
            for b in -1..=2 {
                for c in -1..=2 {
                    for d in -1..=2 {
                        candidates.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        let (theta, twist) = candidates
            .into_iter()
            .find_map(|y| self.theta_candidate(&y).map(|t| (t, y)))
            .ok_or_else(|| err("no Cartan involution of the required type"))?;
        for w in f4::all_roots(&rs) {
            let img = theta.apply(&self.e(&w));
            let target = self.e(&f4::theta(&w));
            if ratio(&img, &target).is_none() {
                return Err(err("theta does not act on roots by e1 -> -e1"));
            }
        }

        // X_mu, normalized by the commutation relations with a1
        let mu = f4::w([1, 0, 0, 0], 1);
        let a1 = f4::simple_roots()[0].clone();
        let e_mu = self.e(&mu);
        let eta = ratio(&theta.apply(&e_mu), &self.e(&neg_w(&mu))).ok_or_else(|| err("theta e_mu"))?;
        if eta != Q::ONE {
            return Err(err("theta e_mu = -e_-mu: no rational X_mu with [X_mu, theta X_mu] = H_mu"));
        }
        let alg = &self.ch.alg;
        let x_a1 = self.e(&a1);
        let x_ma1 = self.e(&neg_w(&a1));
        let th_xa1 = theta.apply(&x_a1);
        let s = ratio(&alg.bracket(&e_mu, &th_xa1), &x_a1).ok_or_else(|| err("[e_mu, theta X_a1]"))?;
        // lexicographically first admissible sign: +1 if it works
        let sign = if s == -Q::ONE {
            Q::ONE
        } else if s == Q::ONE {
            -Q::ONE
        } else {
            return Err(err("unexpected structure constant"));
        };
        let x_mu = scale_vec(&e_mu, &sign);
        let th_xmu = theta.apply(&x_mu);
        let h_mu = self.h_of(&f4::w([2, 0, 0, 0], 1));
        if alg.bracket(&x_mu, &th_xmu) != h_mu {
            return Err(err("{H_mu, X_mu, theta X_mu} is not an s-triple"));
        }

        // Cayley transform
        let a = sub_vec(&th_xmu, &x_mu);
        let nmat = self.alg_s.ad(&to_s(&a));
        let id = Matrix::<QSqrt2>::identity(dim);
        let n2 = &nmat * &nmat;
        let annih = &(&nmat * &(&n2 + &id)) * &(&n2 + &id.scale(&QSqrt2::from(4)));
        if !annih.is_zero() {
            return Err(err("ad(theta X_mu - X_mu) has spectrum outside {0, +-i, +-2i}"));
        }
        let coeffs = cayley_interpolation(&[1, 2]);
        let mut cayley = Matrix::<QSqrt2>::zeros(dim, dim);
        let mut pow = id.clone();
        for c in &coeffs {
            cayley = &cayley + &pow.scale(c);
            pow = &pow * &nmat;
        }
        let chi = |v: &Vq| -> Vec<QSqrt2> { cayley.apply(&to_s(v)) };
        let chi_q = |v: &Vq| -> Result<Vq, LieError> { rationalize(&chi(v)).ok_or_else(|| err("irrational Cayley image")) };

        // compact Cartan subalgebra, in Chevalley coordinates
        let t_vecs: Vec<Vq> = (0..4)
            .map(|i| {
                let mut v = vec![Q::ZERO; 4];
                v[i] = Q::ONE;
                to_q(&chi(&self.h_of(&v))).ok_or_else(|| err("irrational h_k"))
            })
            .collect::<Result<_, _>>()?;
        let hk_of = |v: &[Q]| -> Vq {
            (0..4).fold(vec![Q::ZERO; dim], |acc, i| add_vec(&acc, &scale_vec(&t_vecs[i], &v[i])))
        };

        // compact root vectors chi(e_a)
        let mut raw_root: BTreeMap<String, Vq> = BTreeMap::new();
        for w in f4::all_roots(&rs) {
            let x = chi_q(&self.e(&w))?;
            let compact = theta.apply(&x) == x;
            if compact != f4::predicted_compact(&w) {
                return Err(err(&format!("compactness of {} differs from prediction", fmt_w(&w))));
            }
            if !compact && theta.apply(&x) != scale_vec(&x, &-Q::ONE) {
                return Err(err("noncompact vector not in p"));
            }
            for (i, tv) in t_vecs.iter().enumerate() {
                if alg.bracket(tv, &x) != scale_vec(&x, &w[i]) {
                    return Err(err("compact weight mismatch"));
                }
            }
            if compact {
                raw_root.insert(fmt_w(&w), x);
            }
        }
        let rv = |w: &Weight| raw_root[&fmt_w(w)].clone();
        let coroot = |w: &Weight| -> Vq {
            let n2 = crate::rootdata::dot(w, w);
            hk_of(&w.iter().map(|x| &(&Q::from_int(2) * x) / &n2).collect::<Vec<_>>())
        };
        let killing_g = alg.killing();
        let kap = |x: &Vq, y: &Vq| form(&killing_g, x, y);

        // distinguished elements
        let big_e = add_vec(&x_ma1, &theta.apply(&x_ma1));
        let g1 = weights::gamma1();
        let x1 = rv(&g1);
        let h1 = coroot(&g1);
        let xm1_0 = rv(&neg_w(&g1));
        let xm1 = scale_vec(&xm1_0, &ratio(&h1, &alg.bracket(&x1, &xm1_0)).ok_or_else(|| err("s-triple 1"))?);
        let x4 = alg.bracket(&x1, &big_e);
        let e21 = self.e(&f4::w([1, 1, 0, 0], 1));
        let lam = ratio(&x4, &chi_q(&e21)?).ok_or_else(|| err("[X1,E] is not a gamma4 root vector"))?;
        let x_gamma4 = x4.clone();
        let x_delta = scale_vec(&chi_q(&theta.apply(&e21))?, &lam);
        let e34 = self.e(&f4::w([0, 0, 1, 1], 1));
        let s2 = ratio(&alg.bracket(&x1, &e34), &big_e).ok_or_else(|| err("[X1, X_e3+e4] is not a multiple of E"))?;
        let x2 = scale_vec(&e34, &s2.inverse().unwrap());
        let g2 = weights::gamma2();
        let h2 = coroot(&g2);
        let xm2_0 = rv(&neg_w(&g2));
        let xm2 = scale_vec(&xm2_0, &ratio(&h2, &alg.bracket(&x2, &xm2_0)).ok_or_else(|| err("s-triple 2"))?);
        let h = scale_vec(&h2, &Q::new(1, 2));
        let y = self.h_of(&f4::w([0, -1, -1, -1], 1));
        let z = self.h_of(&f4::w([1, 0, 0, 0], 1));
        let x_phi1 = chi_q(&self.e(&f4::w([1, 0, 1, 0], 1)))?;
        let x_delta1 = chi_q(&theta.apply(&self.e(&f4::w([1, 0, 1, 0], 1))))?;
        let x_phi2 = chi_q(&self.e(&f4::w([1, 0, 0, 1], 1)))?;
        let x_delta2 = chi_q(&theta.apply(&self.e(&f4::w([1, 0, 0, 1], 1))))?;

        // chosen positive root vectors
        let mut pos_vec: BTreeMap<String, Vq> = BTreeMap::new();
        for w in f4::positive_compact(&rs) {
            pos_vec.insert(fmt_w(&w), rv(&w));
        }
        let set = |m: &mut BTreeMap<String, Vq>, w: Weight, v: &Vq| {
            m.insert(fmt_w(&w), v.clone());
        };
        set(&mut pos_vec, g1.clone(), &x1);
        set(&mut pos_vec, weights::gamma3(), &big_e);
        set(&mut pos_vec, weights::gamma4(), &x_gamma4);
        set(&mut pos_vec, weights::delta(), &x_delta);
        set(&mut pos_vec, g2.clone(), &x2);
        set(&mut pos_vec, weights::phi1(), &x_phi1);
        set(&mut pos_vec, weights::delta1(), &x_delta1);
        set(&mut pos_vec, weights::phi2(), &x_phi2);
        set(&mut pos_vec, weights::delta2(), &x_delta2);
        // negative ones, dual under the Killing form for the named roots
        let mut neg_vec: BTreeMap<String, Vq> = BTreeMap::new();
        for w in f4::positive_compact(&rs) {
            let nw = neg_w(&w);
            let base = rv(&nw);
            let v = if w == g1 {
                xm1.clone()
            } else if w == g2 {
                xm2.clone()
            } else {
                let named = [weights::gamma4(), weights::delta(), weights::phi1(), weights::delta1(), weights::phi2(), weights::delta2(), weights::gamma3()];
                if named.contains(&w) {
                    let k = kap(&pos_vec[&fmt_w(&w)], &base);
                    scale_vec(&base, &k.inverse().ok_or_else(|| err("degenerate pairing"))?)
                } else {
                    base
                }
            };
            neg_vec.insert(fmt_w(&nw), v);
        }

        // global order of the k basis
        let mut labels: Vec<(String, Vq)> = Vec::new();
        let name_of = |w: &Weight| -> String {
            let table: [(&str, Weight); 11] = [
                ("delta", weights::delta()),
                ("gamma1", weights::gamma1()),
                ("gamma2", weights::gamma2()),
                ("gamma3", weights::gamma3()),
                ("gamma4", weights::gamma4()),
                ("phi1", weights::phi1()),
                ("delta1", weights::delta1()),
                ("phi2", weights::phi2()),
                ("delta2", weights::delta2()),
                ("psi1", weights::psi1()),
                ("psi2", weights::psi2()),
            ];
            for (n, tw) in &table {
                if tw == w {
                    return format!("X{n}");
                }
                if neg_w(tw) == *w {
                    return format!("X-{n}");
                }
            }
            format!("X{}", fmt_w(w))
        };
        for w in f4::positive_compact(&rs).iter().rev() {
            let nw = neg_w(w);
            labels.push((name_of(&nw), neg_vec[&fmt_w(&nw)].clone()));
        }
        for (i, tv) in t_vecs.iter().enumerate() {
            labels.push((format!("t{}", i + 1), tv.clone()));
        }
        let nonideal_pos = [weights::gamma1(), weights::psi1(), weights::psi2(), weights::delta(), weights::delta1(), weights::delta2(), weights::gamma3()];
        for w in &nonideal_pos {
            labels.push((name_of(w), pos_vec[&fmt_w(w)].clone()));
        }
        let mplus_start = labels.len();
        labels.push(("D2".into(), sub_vec(&x_gamma4, &x_delta)));
        labels.push(("D3".into(), sub_vec(&x_phi1, &x_delta1)));
        labels.push(("D4".into(), sub_vec(&x_phi2, &x_delta2)));
        let t_ij = |i: usize, j: usize| {
            let mut v = [0i64; 4];
            v[i - 1] = 1;
            v[j - 1] = -1;
            self.e(&f4::w(v, 1))
        };
        let s_ij = |i: usize, j: usize| {
            let mut v = [0i64; 4];
            v[i - 1] = 1;
            v[j - 1] = 1;
            self.e(&f4::w(v, 1))
        };
        labels.push(("T23".into(), t_ij(2, 3)));
        labels.push(("T24".into(), t_ij(2, 4)));
        labels.push(("T34".into(), t_ij(3, 4)));
        let y_start = labels.len();
        labels.push(("X2".into(), x2.clone()));
        labels.push(("S23".into(), s_ij(2, 3)));
        labels.push(("S24".into(), s_ij(2, 4)));
        if labels.len() != 36 {
            return Err(err("k basis has the wrong size"));
        }
        let k_vectors: Vec<Vq> = labels.iter().map(|(_, v)| v.clone()).collect();
        let k_names: Vec<String> = labels.iter().map(|(n, _)| n.clone()).collect();
        let k = alg.restrict(&k_vectors, k_names.clone())?;
        let mut k_echelon = Echelon::new();
        for v in &k_vectors {
            k_echelon.insert(to_sparse(v));
        }
        let to_k = |v: &Vq| -> Result<Vq, LieError> {
            k_echelon
                .express(&to_sparse(v))
                .map(|c| crate::exactnum::sparse::to_dense(&c, 36))
                .ok_or_else(|| err("vector not in k"))
        };

        let mut k_labels = Vec::new();
        for (name, v) in &labels {
            let vals: Vec<Option<Q>> = t_vecs.iter().map(|tv| ratio(&alg.bracket(tv, v), v).or_else(|| is_zero(&alg.bracket(tv, v)).then(|| Q::ZERO))).collect();
            let weight = vals.iter().cloned().collect::<Option<Vec<Q>>>();
            let t_weight: Weight = t_vecs[1..]
                .iter()
                .map(|tv| ratio(&alg.bracket(tv, v), v).or_else(|| is_zero(&alg.bracket(tv, v)).then(|| Q::ZERO)).expect("t-weight vector"))
                .collect();
            k_labels.push(KLabel { name: name.clone(), weight, t_weight });
        }

        // Iwasawa basis of g
        let n_roots: Vec<Weight> = f4::p_plus(&rs);
        let mut g_vectors = k_vectors.clone();
        g_vectors.push(z.clone());
        let mut g_names = k_names.clone();
        g_names.push("Z".into());
        for w in &n_roots {
            g_vectors.push(self.e(w));
            g_names.push(format!("N{}", fmt_w(w)));
        }
        let g = alg.restrict(&g_vectors, g_names)?;

        let kk = Matrix::from_rows(k_vectors.iter().map(|x| k_vectors.iter().map(|y| kap(x, y)).collect()).collect());

        let mut named: BTreeMap<String, Vq> = BTreeMap::new();
        let mut put = |n: &str, v: &Vq| -> Result<(), LieError> {
            named.insert(n.to_string(), to_k(v)?);
            Ok(())
        };
        for (i, tv) in t_vecs.iter().enumerate() {
            put(&format!("t{}", i + 1), tv)?;
        }
        put("E", &big_e)?;
        put("Xdelta", &x_delta)?;
        put("X1", &x1)?;
        put("X-1", &xm1)?;
        put("H1", &h1)?;
        put("X2", &x2)?;
        put("X-2", &xm2)?;
        put("H2", &h2)?;
        put("H", &h)?;
        put("X4", &x4)?;
        put("Xgamma4", &x_gamma4)?;
        put("Y", &y)?;
        put("Ytilde", &add_vec(&y, &h))?;
        put("Xphi1", &x_phi1)?;
        put("Xdelta1", &x_delta1)?;
        put("Xphi2", &x_phi2)?;
        put("Xdelta2", &x_delta2)?;
        for (n, w) in [
            ("X-gamma4", weights::gamma4()),
            ("X-delta", weights::delta()),
            ("X-phi1", weights::phi1()),
            ("X-delta1", weights::delta1()),
            ("X-phi2", weights::phi2()),
            ("X-delta2", weights::delta2()),
            ("X-gamma3", weights::gamma3()),
        ] {
            put(n, &neg_vec[&fmt_w(&neg_w(&w))])?;
        }
        for (i, j) in [(2, 3), (2, 4), (3, 4), (3, 2), (4, 2), (4, 3)] {
            put(&format!("T{i}{j}"), &t_ij(i, j))?;
        }
        put("S23", &s_ij(2, 3))?;
        put("S24", &s_ij(2, 4))?;
        for d in ["D2", "D3", "D4"] {
            let v = labels.iter().find(|(n, _)| n == d).unwrap().1.clone();
            put(d, &v)?;
        }
        let h43 = coroot(&f4::w([0, 0, -1, 1], 1));
        let zo = [
            neg_vec[&fmt_w(&neg_w(&weights::gamma4()))].clone(),
            neg_vec[&fmt_w(&neg_w(&weights::delta()))].clone(),
            neg_vec[&fmt_w(&neg_w(&weights::phi2()))].clone(),
            neg_vec[&fmt_w(&neg_w(&weights::delta2()))].clone(),
            neg_vec[&fmt_w(&neg_w(&weights::gamma3()))].clone(),
            h43,
        ]
        .iter()
        .fold(vec![Q::ZERO; dim], |acc, v| add_vec(&acc, v));
        put("Zo", &zo)?;

        let mut root_vectors = BTreeMap::new();
        for (key, v) in pos_vec.iter().chain(neg_vec.iter()) {
            root_vectors.insert(key.clone(), to_k(v)?);
        }

        Ok(F4Model {
            theta,
            theta_twist: twist,
            x_mu,
            cayley_coeffs: coeffs,
            cayley,
            killing_g,
            k_vectors,
            k_labels,
            k,
            killing_k: kk,
            g,
            g_vectors,
            n_roots,
            mplus_start,
            y_start,
            named,
            root_vectors,
            k_echelon,
            ch: self.ch,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_builds_with_expected_dimensions() {
        let m = F4Model::build().unwrap();
        assert_eq!(m.dim_k(), 36);
        assert_eq!(m.g.dim(), 52);
        assert_eq!(m.p_basis().len(), 16);
        assert_eq!(m.m_basis().len(), 21);
        assert_eq!(m.n_roots.len(), 15);
    }

    #[test]
    fn model_battery_passes() {
        let m = F4Model::build().unwrap();
        let checks = super::super::battery::all(&m);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
