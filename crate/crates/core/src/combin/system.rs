//! Enveloping-algebra side of the linear systems: typed coefficients,
//! the operators `D_k`, the element `U` and the sums `Sigma_1`, `Sigma_2`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{binom, coefficient_a, index_sets, system_entry, DegreeProfile};
use crate::exactnum::{factorial, Rational};
use crate::repth::{KTypeLabel, Repth, RepthError};
use crate::rootdata::f4::weights;
use crate::uea::{express_in, joint_kernel, IwasawaElement, Uea, Workbench};

type Q = Rational;
type Vq = Vec<Q>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinError {
    #[error("index out of range: {0}")]
    Range(String),
    #[error("type mismatch: {0}")]
    Type(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Repth(#[from] RepthError),
}

/// An element of `U(k)^M (x) U(a)` with each coefficient split into pure
/// K-types, computed once.
#[derive(Clone, Debug)]
pub struct TypedElement {
    pub b: IwasawaElement,
    /// `parts[r]` lists `(label, component)` for the coefficient `b_r`.
    pub parts: Vec<Vec<(KTypeLabel, Uea)>>,
}

impl TypedElement {
    pub fn degree(&self) -> Option<usize> {
        self.b.degree()
    }

    /// Component of `b_r` of type `(k, l)`, zero when absent.
    pub fn component(&self, r: usize, k: u32, l: u32) -> Uea {
        self.parts
            .get(r)
            .and_then(|ps| ps.iter().find(|(lab, _)| lab.k == k && lab.l == l))
            .map(|(_, u)| u.clone())
            .unwrap_or_default()
    }

    pub fn kostant_degree(&self, r: usize) -> Option<u32> {
        self.parts.get(r)?.iter().map(|(l, _)| l.degree()).max()
    }

    /// `d(b_r) <= 2 d_r` for every `r`.
    pub fn degree_bound(&self) -> Result<(), CombinError> {
        let m = self.degree().unwrap_or(0) as u32;
        let prof = DegreeProfile::new(m);
        for (r, d) in prof.dr.iter().enumerate() {
            if let Some(k) = self.kostant_degree(r) {
                if k > 2 * d {
                    return Err(CombinError::Hypothesis(format!("d(b_{r}) = {k} exceeds 2 d_{r} = {}", 2 * d)));
                }
            }
        }
        Ok(())
    }

    /// `P(T)`: every K-type of `b_r` lies on a skew diagonal `t <= T - r`.
    pub fn p_holds(&self, t: u32) -> bool {
        self.parts.iter().enumerate().all(|(r, ps)| ps.iter().all(|(lab, _)| (lab.k + lab.l) as i64 <= t as i64 - r as i64))
    }

    /// `Q(n)` at `T`: the types `b^r_{2i, T-r-2i}` with `T-r-2i < n` vanish.
    pub fn q_holds(&self, t: u32, n: u32) -> bool {
        self.parts.iter().enumerate().all(|(r, ps)| {
            ps.iter().all(|(lab, _)| {
                let on_diagonal = lab.k + lab.l + r as u32 == t;
                !(on_diagonal && lab.l < n)
            })
        })
    }

    /// Membership in the subspace where the types of every even coefficient
    /// `b_{2k}` have Kostant degree above `2k`.
    pub fn in_b_tilde(&self) -> bool {
        self.parts.iter().enumerate().filter(|(r, _)| r % 2 == 0).all(|(r, ps)| ps.iter().all(|(lab, _)| lab.k / 2 + lab.l > r as u32 / 2))
    }
}

/// Both sides of one congruence, reduced modulo `U(k)m+`.
#[derive(Clone, Debug, Serialize)]
pub struct Assembly {
    pub t: u32,
    pub l: u32,
    pub n: u32,
    /// Residual of the assembly in terms of the coefficients `b_r`.
    pub direct: String,
    /// Residual of the assembly in terms of the K-type components.
    pub typed: String,
    pub direct_zero: bool,
    pub typed_zero: bool,
}

pub struct SystemContext<'a> {
    pub wb: &'a Workbench,
    pub repth: &'a Repth<'a>,
    xdelta: Vq,
    e: Vq,
    x1: Vq,
}

impl<'a> SystemContext<'a> {
    pub fn new(repth: &'a Repth<'a>) -> Self {
        let wb = repth.wb;
        SystemContext { wb, repth, xdelta: wb.lie("Xdelta"), e: wb.lie("E"), x1: wb.lie("X1") }
    }

    /// Splits every coefficient into pure K-types.
    pub fn typed(&self, b: &IwasawaElement) -> Result<TypedElement, CombinError> {
        let mut parts = Vec::new();
        for (r, c) in b.coeffs.iter().enumerate() {
            let dec = self.repth.kostant(c)?;
            let mut ps = Vec::new();
            for comp in dec.components {
                match comp.labels.as_slice() {
                    [] => return Err(CombinError::Type(format!("a component of b_{r} has no detected label"))),
                    [lab] => ps.push((*lab, comp.part)),
                    labs => return Err(CombinError::Type(format!("b_{r} mixes the types {labs:?} in one eigenspace"))),
                }
            }
            parts.push(ps);
        }
        Ok(TypedElement { b: b.clone(), parts })
    }

    /// `Xdot_delta^p Edot^q (u)`.
    pub fn derive(&self, p: u32, q: u32, u: &Uea) -> Uea {
        let uk = self.wb.uk();
        uk.ad_pow(&self.xdelta, p, &uk.ad_pow(&self.e, q, u))
    }

    fn word(&self, parts: &[(&str, u32)]) -> Uea {
        let uk = self.wb.uk();
        parts.iter().fold(Uea::one(), |acc, (name, e)| uk.mul(&acc, &uk.pow(&self.wb.el(name), *e)))
    }

    /// Coefficients `(a, b)` with `X_delta X_4 + a T_23 S_23 + b T_24 S_24`
    /// the unique `k+`-dominant element of that span. The root vectors carry
    /// the model's normalization, so `a = -b` holds but `|a|` need not be 1.
    pub fn u_coefficients(&self) -> Result<(Q, Q), CombinError> {
        let w = |a: &str, b: &str| self.word(&[(a, 1), (b, 1)]);
        let cands = [w("Xdelta", "X4"), w("T23", "S23"), w("T24", "S24")];
        let uk = self.wb.uk();
        let simple = self.wb.model.k_simple();
        let maps: Vec<Box<dyn Fn(&Uea) -> Uea + '_>> =
            simple.iter().map(|(_, e, _)| Box::new(move |u: &Uea| uk.ad(e, u)) as Box<dyn Fn(&Uea) -> Uea>).collect();
        let refs: Vec<&dyn Fn(&Uea) -> Uea> = maps.iter().map(|f| f.as_ref()).collect();
        let kernel = joint_kernel(&cands, &refs);
        let [k] = kernel.as_slice() else {
            return Err(CombinError::Type(format!("dominant part of the span has dimension {}", kernel.len())));
        };
        let c = express_in(&cands, k).ok_or_else(|| CombinError::Type("kernel element outside the span".into()))?;
        let lead = c[0].recip().ok_or_else(|| CombinError::Type("X_delta X_4 does not occur".into()))?;
        Ok((&c[1] * &lead, &c[2] * &lead))
    }

    /// `U = X_delta X_4 + a T_23 S_23 + b T_24 S_24`, dominant of weight `gamma_4 + delta`.
    pub fn u_element(&self) -> Uea {
        let (a, b) = self.u_coefficients().expect("the model has a unique dominant U");
        let w = |x: &str, y: &str| self.word(&[(x, 1), (y, 1)]);
        let mut u = w("Xdelta", "X4");
        u.axpy(&a, &w("T23", "S23"));
        u.axpy(&b, &w("T24", "S24"));
        u
    }

    /// Whether `[h, u] = w(h) u` for all `h` in the compact Cartan subalgebra.
    pub fn has_weight(&self, u: &Uea, w: &[Q]) -> bool {
        let m = &self.wb.model;
        m.h_k().iter().all(|h| self.wb.uk().ad(h, u) == u.scale(&m.eval_weight(w, h)))
    }

    /// `Xdot(u) = 0` for the simple root vectors of `k+`.
    pub fn is_dominant(&self, u: &Uea) -> bool {
        self.wb.model.k_simple().iter().all(|(_, e, _)| self.wb.uk().ad(e, u).is_zero())
    }

    /// `Xdot(u) = 0 mod U(k)y` for every `X` in `q+`.
    pub fn q_plus_null_mod_y(&self, u: &Uea) -> bool {
        let qplus = self.wb.model.subspace("q+").expect("q+ is defined");
        let md = self.wb.mod_y();
        qplus.iter().all(|x| md.reduce(&self.wb.uk().ad(x, u)).is_zero())
    }

    pub fn x1_null(&self, u: &Uea) -> bool {
        self.wb.uk().ad(&self.x1, u).is_zero()
    }

    /// `D_k(b) = sum_l (-2)^l C(k,l) C(j+l,l)^{-1} Xdot_delta^{2i-l} Edot^{j+l}(b) E^{k-l} X_4^l`
    /// for `b` of type `(2i, j)`.
    pub fn d_k(&self, b: &Uea, label: KTypeLabel, k: u32) -> Result<Uea, CombinError> {
        if label.k % 2 == 1 {
            return Err(CombinError::Type(format!("type {label} has an odd first entry")));
        }
        if k > label.k {
            return Err(CombinError::Range(format!("k = {k} exceeds 2i = {}", label.k)));
        }
        let j = label.l;
        let mut out = Uea::zero();
        for l in 0..=k {
            let c = Q::from_int(-2).pow(l) * binom(k.into(), l.into()) / binom((j + l).into(), l.into());
            let tail = self.word(&[("E", k - l), ("X4", l)]);
            out.axpy(&c, &self.wb.uk().mul(&self.derive(label.k - l, j + l, b), &tail));
        }
        Ok(out)
    }

    /// The weight `i(gamma_4 + delta) + (j + k) gamma_3` expected of `D_k`.
    pub fn d_k_weight(label: KTypeLabel, k: u32) -> Vq {
        weights::xi(label.k.into(), (label.l + k).into())
    }

    /// `Sigma_1` and `Sigma_2` built from the coefficients `b_r`.
    pub fn sigmas_direct(&self, b: &IwasawaElement, t: u32, l: u32, n: u32) -> (Uea, Uea) {
        let sigma = |a: u32, c: u32| {
            let m = b.degree().unwrap_or(0) as u32;
            let mut out = Uea::zero();
            for i in c..=m.min(t - a) {
                for r in i..=m.min(i + a) {
                    let coef = coefficient_a(i.into(), r.into(), t.into(), c.into(), a.into()).value;
                    if coef.is_zero() {
                        continue;
                    }
                    let d = self.derive(t - a - i, a + i - r, &b.coeff(r as usize));
                    let tail = self.word(&[("E", r - i), ("Xdelta", i - c)]);
                    out.axpy(&coef, &self.wb.uk().mul(&d, &tail));
                }
            }
            out
        };
        (sigma(l, n), sigma(n, l))
    }

    /// `Sigma_1` and `Sigma_2` built from the K-types on the skew diagonal
    /// `T - r`, with `X_delta^T` appended and part of it traded for `X_4`.
    pub fn sigmas_typed(&self, b: &TypedElement, t: u32, l: u32, n: u32) -> (Uea, Uea) {
        let m = b.degree().unwrap_or(0) as u32;
        let prof = DegreeProfile::new(m);
        let sigma = |a: u32, c: u32| {
            let mut out = Uea::zero();
            for i in c..=m.min(t - a) {
                for r in i..=m.min(i + a) {
                    let coef = coefficient_a(i.into(), r.into(), t.into(), c.into(), a.into()).value;
                    if coef.is_zero() || r > t {
                        continue;
                    }
                    let diag = t - r;
                    let lo = diag.saturating_sub(prof.dr[r as usize]);
                    for k in lo..=diag / 2 {
                        let comp = b.component(r as usize, 2 * k, diag - 2 * k);
                        if comp.is_zero() {
                            continue;
                        }
                        let d = self.derive(t - a - i, a + i - r, &comp);
                        let tail = self.word(&[("E", r - i), ("Xdelta", t - k), ("X4", k + i - c)]);
                        out.axpy(&coef, &self.wb.uk().mul(&d, &tail));
                    }
                }
            }
            out
        };
        (sigma(l, n), sigma(n, l))
    }

    /// `(-1)^n Sigma_1 E^n - (-1)^l Sigma_2 E^l`.
    pub fn epsilon(&self, sigmas: &(Uea, Uea), l: u32, n: u32) -> Uea {
        let uk = self.wb.uk();
        let sign = |p: u32| if p % 2 == 0 { Q::one() } else { -Q::one() };
        let a = uk.mul(&sigmas.0, &self.word(&[("E", n)])).scale(&sign(n));
        let b = uk.mul(&sigmas.1, &self.word(&[("E", l)])).scale(&sign(l));
        a.sub(&b)
    }

    /// Checks the hypotheses under which the congruences are stated.
    pub fn hypotheses(&self, b: &TypedElement, t: u32, l: u32, n: u32) -> Result<(), CombinError> {
        b.degree_bound()?;
        let m = b.degree().unwrap_or(0) as u32;
        let d0 = DegreeProfile::new(m).d0();
        if t < m || t > 2 * d0 {
            return Err(CombinError::Hypothesis(format!("T = {t} is outside [{m}, {}]", 2 * d0)));
        }
        if l + n > t {
            return Err(CombinError::Hypothesis(format!("l + n = {} exceeds T = {t}", l + n)));
        }
        if !b.p_holds(t) {
            return Err(CombinError::Hypothesis(format!("P({t}) fails")));
        }
        Ok(())
    }

    /// Both assemblies of the congruence for `(l, n)`, reduced modulo `U(k)m+`.
    pub fn assemble(&self, b: &TypedElement, t: u32, l: u32, n: u32) -> Result<Assembly, CombinError> {
        self.hypotheses(b, t, l, n)?;
        let md = self.wb.mod_mplus();
        let direct = md.reduce(&self.epsilon(&self.sigmas_direct(&b.b, t, l, n), l, n));
        let typed = md.reduce(&self.epsilon(&self.sigmas_typed(b, t, l, n), l, n));
        Ok(Assembly {
            t,
            l,
            n,
            direct_zero: direct.is_zero(),
            typed_zero: typed.is_zero(),
            direct: self.wb.fmt(&direct),
            typed: self.wb.fmt(&typed),
        })
    }

    /// `E_L(n) = sum_l (-2)^l C(L,l) eps(l,n) E^{L-l} X_4^{l+n}` together with
    /// the split `(-1)^n E^1_L(n) E^n - E^2_L(n) E^L`, both unreduced.
    pub fn script_e(&self, b: &TypedElement, t: u32, big_l: u32, n: u32, typed: bool) -> (Uea, Uea) {
        let uk = self.wb.uk();
        let (mut total, mut e1, mut e2) = (Uea::zero(), Uea::zero(), Uea::zero());
        for l in 0..=big_l {
            let sig = if typed { self.sigmas_typed(b, t, l, n) } else { self.sigmas_direct(&b.b, t, l, n) };
            let c = Q::from_int(-2).pow(l) * binom(big_l.into(), l.into());
            let tail = self.word(&[("E", big_l - l), ("X4", l + n)]);
            total.axpy(&c, &uk.mul(&self.epsilon(&sig, l, n), &tail));
            e1.axpy(&c, &uk.mul(&sig.0, &tail));
            e2.axpy(&(Q::from_int(2).pow(l) * binom(big_l.into(), l.into())), &uk.mul(&sig.1, &self.word(&[("X4", l + n)])));
        }
        let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
        let split = uk.mul(&e1, &self.word(&[("E", n)])).scale(&sign).sub(&uk.mul(&e2, &self.word(&[("E", big_l)])));
        (total, split)
    }

    /// `u^r = r! (-1)^r Xdot_delta^{T-n-r} Edot^n (b^r_{T-n-r, n})`.
    pub fn dominant_unknown(&self, b: &TypedElement, t: u32, n: u32, r: u32) -> Uea {
        let comp = b.component(r as usize, t - n - r, n);
        let sign = if r % 2 == 0 { Q::one() } else { -Q::one() };
        self.derive(t - n - r, n, &comp).scale(&(factorial(r.into()) * sign))
    }

    /// Left-hand sides of the system in the dominant unknowns for every
    /// `L` in `L(T,n)`; each must vanish exactly when `P(T)` and `Q(n)` hold.
    pub fn dominant_system(&self, b: &TypedElement, t: u32, n: u32, reduced: bool) -> Result<Vec<(u32, Uea)>, CombinError> {
        let m = b.degree().unwrap_or(0) as u32;
        let sets = index_sets(m, t, n)?;
        if !b.p_holds(t) || !b.q_holds(t, n) {
            return Err(CombinError::Hypothesis(format!("P({t}) and Q({n}) do not both hold")));
        }
        let uk = self.wb.uk();
        let u = self.u_element();
        let cols = if reduced { &sets.r_tilde } else { &sets.r };
        let unknowns: Vec<(u32, Uea)> = cols
            .iter()
            .map(|&r| (r, self.dominant_unknown(b, t, n, r)))
            .filter(|(_, x)| !x.is_zero())
            .map(|(r, x)| (r, uk.mul(&x, &uk.pow(&u, (t + r + n) / 2))))
            .collect();
        Ok(sets
            .l
            .iter()
            .map(|&big_l| {
                let mut lhs = Uea::zero();
                for (r, x) in &unknowns {
                    lhs.axpy(&system_entry(big_l.into(), (*r).into(), t.into(), n.into()), x);
                }
                (big_l, lhs)
            })
            .collect())
    }

    /// `u - X_delta X_4` for the element `U`.
    pub fn u_defect(&self) -> Uea {
        self.u_element().sub(&self.word(&[("Xdelta", 1), ("X4", 1)]))
    }

    /// `gamma_4 + delta`.
    pub fn u_weight() -> Vq {
        weights::xi(2, 0)
    }
}
