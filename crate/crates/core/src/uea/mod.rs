//! Universal enveloping algebras: PBW straightening, derivations, left-ideal
//! normal forms, the Iwasawa projection and Casimir elements.

pub mod battery;
mod element;
mod engine;
mod iwasawa;

use std::cell::OnceCell;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::exactnum::sparse::{kernel_of_images, SparseVec};
use crate::exactnum::{Matrix, Rational};
use crate::liealg::{F4Model, LieAlgebra, LieError};

pub use element::{Mono, Uea};
pub use engine::Pbw;
pub use iwasawa::{uea_from_json, uea_to_json, IwasawaElement, IwasawaJson, TermJson};

type Vq = Vec<Rational>;

/// Decomposition `u = reduced + sum_k a_k X_k` with respect to a left ideal
/// spanned by the basis suffix starting at `start`.
#[derive(Clone, Debug)]
pub struct IdealNormalForm {
    /// `components[k]` multiplies the ideal generator with label `start + k`.
    pub components: Vec<Uea>,
    pub reduced: Uea,
}

pub fn ideal_normal_form(u: &Uea, start: usize, dim: usize) -> IdealNormalForm {
    let mut components = vec![Uea::zero(); dim.saturating_sub(start)];
    let mut reduced = Uea::zero();
    for (m, c) in u.iter() {
        match m.last_label() {
            Some(l) if l >= start => {
                // the largest ideal label is the last factor
                let mut v = m.0.clone();
                let last = v.last_mut().unwrap();
                last.1 -= 1;
                if last.1 == 0 {
                    v.pop();
                }
                components[l - start].add_term(Mono(v), c.clone());
            }
            _ => reduced.add_term(m.clone(), c.clone()),
        }
    }
    IdealNormalForm { components, reduced }
}

/// `sum_{a,b} (B^-1)_{ab} y_a y_b` for a basis `y` of a subspace on which
/// the form `B` is nondegenerate.
pub fn casimir_of(pbw: &Pbw, basis: &[Vq], form: &Matrix<Rational>) -> Option<Uea> {
    let n = basis.len();
    let gram = Matrix::from_rows(
        (0..n).map(|a| (0..n).map(|b| crate::liealg::form(form, &basis[a], &basis[b])).collect()).collect(),
    );
    let inv = gram.inverse()?;
    let ys: Vec<Uea> = basis.iter().map(|v| Uea::from_lie(v)).collect();
    let mut out = Uea::zero();
    for a in 0..n {
        let mut dual = Uea::zero();
        for b in 0..n {
            dual.axpy(&inv[(a, b)], &ys[b]);
        }
        if !dual.is_zero() {
            out.axpy(&Rational::one(), &pbw.mul(&ys[a], &dual));
        }
    }
    Some(out)
}

/// Casimir element of a Lie algebra with respect to its Killing form.
pub fn casimir(alg: &LieAlgebra<Rational>, pbw: &Pbw) -> Option<Uea> {
    let basis: Vec<Vq> = (0..alg.dim()).map(|i| crate::liealg::unit(alg.dim(), i)).collect();
    casimir_of(pbw, &basis, &alg.killing())
}

/// All PBW monomials of degree at most `d` in labels `0..n`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Mono> {
    fn rec(n: usize, start: usize, left: u32, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Mono>) {
        out.push(Mono(cur.clone()));
        if left == 0 {
            return;
        }
        for l in start..n {
            for e in 1..=left {
                cur.push((l as u8, e as u8));
                rec(n, l + 1, left - e, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Assigns stable integer ids to monomials, for linear algebra on `U`.
#[derive(Default)]
pub struct MonoIndex {
    ids: FxHashMap<Mono, usize>,
    monos: Vec<Mono>,
}

impl MonoIndex {
    pub fn id(&mut self, m: &Mono) -> usize {
        if let Some(&i) = self.ids.get(m) {
            return i;
        }
        let i = self.monos.len();
        self.ids.insert(m.clone(), i);
        self.monos.push(m.clone());
        i
    }

    pub fn get(&self, m: &Mono) -> Option<usize> {
        self.ids.get(m).copied()
    }

    pub fn mono(&self, i: usize) -> &Mono {
        &self.monos[i]
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    /// Sparse coordinate vector of `u`, with key offset `block * stride`.
    pub fn encode(&mut self, u: &Uea, block: usize, stride: usize) -> SparseVec<Rational> {
        u.iter().map(|(m, c)| (block * stride + self.id(m), c.clone())).collect()
    }
}

/// Common kernel of the linear maps `u -> maps[j](u)` on the span of `candidates`.
pub fn joint_kernel(candidates: &[Uea], maps: &[&dyn Fn(&Uea) -> Uea]) -> Vec<Uea> {
    const STRIDE: usize = 1 << 40;
    let mut idx = MonoIndex::default();
    let images: Vec<SparseVec<Rational>> = candidates
        .iter()
        .map(|u| {
            let mut v = SparseVec::new();
            for (j, f) in maps.iter().enumerate() {
                v.extend(idx.encode(&f(u), j, STRIDE));
            }
            v
        })
        .collect();
    kernel_of_images(images)
        .into_iter()
        .map(|comb| {
            let mut u = Uea::zero();
            for (i, c) in comb {
                u.axpy(&c, &candidates[i]);
            }
            u
        })
        .collect()
}

/// Basis of `{u in U_d : ad(X) u = 0 for X in sub}`.
pub fn invariants_up_to_degree(pbw: &Pbw, sub: &[Vq], d: u32) -> Vec<Uea> {
    let cands: Vec<Uea> = monomials_up_to(pbw.dim(), d).into_iter().map(|m| Uea::term(m, Rational::one())).collect();
    let maps: Vec<Box<dyn Fn(&Uea) -> Uea + '_>> = sub.iter().map(|x| Box::new(move |u: &Uea| pbw.ad(x, u)) as Box<dyn Fn(&Uea) -> Uea>).collect();
    let refs: Vec<&dyn Fn(&Uea) -> Uea> = maps.iter().map(|b| b.as_ref()).collect();
    joint_kernel(&cands, &refs)
}

/// Linear span membership: coefficients `c` with `target = sum c_i basis_i`.
pub fn express_in(basis: &[Uea], target: &Uea) -> Option<Vec<Rational>> {
    let mut idx = MonoIndex::default();
    let mut ech = crate::exactnum::Echelon::new();
    for b in basis {
        ech.insert(idx.encode(b, 0, 0));
    }
    let t = idx.encode(target, 0, 0);
    if t.keys().any(|&k| k >= idx.len()) {
        return None;
    }
    ech.express(&t).map(|s| (0..basis.len()).map(|i| s.get(&i).cloned().unwrap_or_default()).collect())
}

/// Normalized projection of the Casimir of `g` and the recorded scalars.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaData {
    #[serde(skip)]
    pub omega: IwasawaElement,
    /// `omega = scale * P(Omega)`.
    pub scale: Rational,
    /// `omega_1` as a multiple of one.
    pub omega1: Rational,
    /// `omega_0 = casimir_coeff * Casimir(m) + constant`.
    pub casimir_coeff: Rational,
    pub constant: Rational,
}

/// The F4 model with PBW engines for `U(k)`, its quotients by `U(k)m+` and
/// `U(k)y`, and `U(g)` in the Iwasawa basis.
pub struct Workbench {
    pub model: F4Model,
    uk: Pbw,
    mod_mplus: Pbw,
    mod_y: Pbw,
    mod_n: Pbw,
    ug: OnceCell<Pbw>,
}

impl Workbench {
    pub fn new(model: F4Model) -> Self {
        let nk = model.dim_k();
        Workbench {
            uk: Pbw::new(&model.k),
            mod_mplus: Pbw::truncated(&model.k, model.mplus_start),
            mod_y: Pbw::truncated(&model.k, model.y_start),
            mod_n: Pbw::truncated(&model.g, nk + 1),
            ug: OnceCell::new(),
            model,
        }
    }

    pub fn build() -> Result<Self, LieError> {
        F4Model::build().map(Self::new)
    }

    /// `U(k)`.
    pub fn uk(&self) -> &Pbw {
        &self.uk
    }

    /// `U(k) / U(k)m+`.
    pub fn mod_mplus(&self) -> &Pbw {
        &self.mod_mplus
    }

    /// `U(k) / U(k)y`.
    pub fn mod_y(&self) -> &Pbw {
        &self.mod_y
    }

    /// `U(g) / U(g)n` in the Iwasawa basis.
    pub fn mod_n(&self) -> &Pbw {
        &self.mod_n
    }

    /// `U(g)` in the Iwasawa basis.
    pub fn ug(&self) -> &Pbw {
        self.ug.get_or_init(|| Pbw::new(&self.model.g))
    }

    pub fn z_label(&self) -> usize {
        self.model.dim_k()
    }

    /// Named element of `k` as an element of `U(k)`.
    pub fn el(&self, name: &str) -> Uea {
        Uea::from_lie(&self.model.el(name))
    }

    pub fn lie(&self, name: &str) -> Vq {
        self.model.el(name)
    }

    pub fn names(&self) -> &[String] {
        self.model.g.names()
    }

    pub fn fmt(&self, u: &Uea) -> String {
        self.uk.fmt(u)
    }

    /// Weight of a PBW monomial of `U(k)` for the Cartan subalgebra of `m`.
    pub fn m_weight(&self, m: &Mono) -> Vq {
        let mut w = vec![Rational::ZERO; 3];
        for &(l, e) in &m.0 {
            for (x, y) in w.iter_mut().zip(&self.model.k_labels[l as usize].t_weight) {
                *x += &(y * &Rational::from_int(i64::from(e)));
            }
        }
        w
    }

    /// `k` vector as an element of `g` in the Iwasawa basis.
    pub fn k_in_g(&self, v: &[Rational]) -> Vq {
        let mut out = v.to_vec();
        out.resize(self.model.g.dim(), Rational::ZERO);
        out
    }

    /// The Lepowsky projection `P : U(g) -> U(k) (x) U(a)`.
    pub fn project(&self, u: &Uea) -> IwasawaElement {
        IwasawaElement::from_reduced(&self.mod_n.reduce(u), self.z_label()).expect("n labels were dropped")
    }

    /// Projection of a product, computed without forming it in `U(g)`.
    pub fn project_mul(&self, u: &Uea, v: &Uea) -> IwasawaElement {
        IwasawaElement::from_reduced(&self.mod_n.mul(u, v), self.z_label()).expect("n labels were dropped")
    }

    /// Casimir of `g`, in `U(g)` modulo `U(g)n` (so already projected).
    pub fn casimir_g_projected(&self) -> Uea {
        casimir(&self.model.g, &self.mod_n).expect("Killing form of g is nondegenerate")
    }

    pub fn casimir_g(&self) -> Uea {
        casimir(&self.model.g, self.ug()).expect("Killing form of g is nondegenerate")
    }

    /// Casimir of `m` for the restriction of the Killing form of `g`.
    pub fn casimir_m(&self) -> Uea {
        casimir_of(&self.uk, &self.model.m_basis(), &self.model.killing_k).expect("m is reductive")
    }

    pub fn casimir_k(&self) -> Uea {
        let n = self.model.dim_k();
        let basis: Vec<Vq> = (0..n).map(|i| crate::liealg::unit(n, i)).collect();
        casimir_of(&self.uk, &basis, &self.model.killing_k).expect("k is semisimple")
    }

    /// `omega = scale * P(Omega)` with `omega_2 = 1`, plus the scalars in
    /// `omega_1` and `omega_0`.
    pub fn omega(&self) -> Result<OmegaData, String> {
        let p = self.project(&self.casimir_g_projected());
        if p.degree() != Some(2) {
            return Err(format!("P(Omega) has Z-degree {:?}", p.degree()));
        }
        let b2 = p.coeffs[2].as_scalar().ok_or("omega_2 is not a scalar")?;
        let scale = b2.recip().ok_or("omega_2 vanishes")?;
        let omega = p.scale(&scale);
        let omega1 = omega.coeffs[1].as_scalar().ok_or("omega_1 is not a scalar")?;
        if omega1.is_zero() {
            return Err("omega_1 vanishes".into());
        }
        let cm = self.casimir_m();
        let sol = express_in(&[cm, Uea::one()], &omega.coeffs[0]).ok_or("omega_0 is not in span{Casimir(m), 1}")?;
        Ok(OmegaData { omega, scale, omega1, casimir_coeff: sol[0].clone(), constant: sol[1].clone() })
    }
}

#[cfg(test)]
mod tests;
