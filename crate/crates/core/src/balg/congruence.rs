//! Statement-level checks of the congruences modulo `U(k)y` on exhaustive
//! low-degree inputs: every element satisfying the hypotheses is found by
//! solving the linear conditions exactly, then the conclusion is tested.

use num_traits::One;

use crate::check::Check;
use crate::exactnum::sparse::{kernel_of_images, SparseVec};
use crate::exactnum::Rational;
use crate::rootdata::f4::weights;
use crate::uea::{invariants_up_to_degree, joint_kernel, monomials_up_to, MonoIndex, Uea, Workbench};

type Q = Rational;

fn measured(id: impl Into<String>, anchor: impl Into<String>, value: String) -> Check {
    let mut c = Check::new(id, anchor, true);
    c.witness = Some(value);
    c
}

/// Elements `u` of `U_r(k)m+` of weight `a(gamma4+delta) + b gamma3` with
/// `Xdot(u) in U(k)y` for `X` in `q+` lie in `U(k)y`.
pub fn weight_vectors_in_mplus(wb: &Workbench, max_degree: u32, ab: &[(i64, i64)]) -> Vec<Check> {
    let m = &wb.model;
    let (uk, md) = (wb.uk(), wb.mod_y());
    let qplus = m.subspace("q+").expect("q+ is defined");
    let t1 = m.el("t1");
    let n = m.dim_k();
    let mut out = Vec::new();
    for deg in 1..=max_degree {
        let monos = monomials_up_to(n, deg - 1);
        for &(a, b) in ab {
            let lambda = weights::xi(2 * a, b);
            let cands: Vec<Uea> = monos
                .iter()
                .flat_map(|mo| (m.mplus_start..m.y_start).map(move |x| (mo, x)))
                .filter(|(mo, x)| {
                    let w = wb.m_weight(mo);
                    w.iter().zip(&m.k_labels[*x].t_weight).zip(&lambda[1..]).all(|((p, q), l)| &(p + q) == l)
                })
                .map(|(mo, x)| md.mul(&Uea::term(mo.clone(), Q::one()), &Uea::gen(x)))
                .filter(|u| !u.is_zero())
                .collect();
            let l1 = lambda[0].clone();
            let mut maps: Vec<Box<dyn Fn(&Uea) -> Uea + '_>> = vec![Box::new(|u: &Uea| md.reduce(&uk.ad(&t1, u)).sub(&u.scale(&l1)))];
            for x in &qplus {
                maps.push(Box::new(move |u: &Uea| md.reduce(&uk.ad(x, u))));
            }
            let refs: Vec<&dyn Fn(&Uea) -> Uea> = maps.iter().map(|f| f.as_ref()).collect();
            let weight_only = joint_kernel(&cands, &refs[..1]).into_iter().filter(|u| !u.is_zero()).count();
            let bad: Vec<Uea> = joint_kernel(&cands, &refs).into_iter().filter(|u| !u.is_zero()).collect();
            let id = format!("mplus_mod_y.deg{deg}.{a}.{b}");
            out.push(Check::with(id.clone(), "weight vectors of U(k)m+ with Xdot(u) in U(k)y for X in q+ lie in U(k)y", bad.is_empty(), || {
                format!("{} survivors, first {}", bad.len(), wb.fmt(&bad[0]))
            }));
            out.push(measured(format!("{id}.size"), "weight vectors of U_r(k)m+ modulo U(k)y before the q+ condition (measured)", weight_only.to_string()));
        }
    }
    out
}

/// `sum_j eta_j E^j = 0 mod U(k)y` with `Xdot_1(eta_j) = 0` forces the even
/// and odd parts to vanish separately; for two terms each `eta_j` vanishes.
pub fn parity_split(wb: &Workbench, r: u32, j_max: u32) -> Vec<Check> {
    let (uk, md) = (wb.uk(), wb.mod_y());
    let x1 = wb.lie("X1");
    let kernel = invariants_up_to_degree(uk, std::slice::from_ref(&x1), r);
    let e = wb.el("E");
    let mut out = Vec::new();
    for top in [1, j_max] {
        let mut idx = MonoIndex::default();
        let mut blocks: Vec<Vec<Uea>> = Vec::new();
        for j in 0..=top {
            let ej = uk.pow(&e, j);
            blocks.push(kernel.iter().map(|k| md.mul(k, &ej)).collect());
        }
        let images: Vec<SparseVec<Q>> = blocks.iter().flatten().map(|u| idx.encode(u, 0, 0)).collect();
        let deps = kernel_of_images(images);
        let nk = kernel.len();
        let (mut bad, mut nontrivial) = (0usize, 0usize);
        for dep in &deps {
            let mut parts = vec![Uea::zero(); top as usize + 1];
            let mut reduced = [Uea::zero(), Uea::zero()];
            for (t, c) in dep {
                let (j, i) = (t / nk, t % nk);
                parts[j].axpy(c, &kernel[i]);
                reduced[j % 2].axpy(c, &blocks[j][i]);
            }
            if parts.iter().skip(1).any(|p| !md.reduce(p).is_zero()) {
                nontrivial += 1;
            }
            let ok = if top == 1 { parts.iter().all(|p| md.reduce(p).is_zero()) } else { reduced.iter().all(Uea::is_zero) };
            if !ok {
                bad += 1;
            }
        }
        let (id, anchor) = if top == 1 {
            ("u0_u1E", "u0 + u1 E = 0 mod U(k)y with Xdot_1(u0) = Xdot_1(u1) = 0 implies u0 = u1 = 0 mod U(k)y")
        } else {
            ("even_odd", "sum eta_j E^j = 0 mod U(k)y with Xdot_1(eta_j) = 0 implies the even and odd sums vanish")
        };
        out.push(Check::with(format!("{id}.r{r}"), anchor, bad == 0, || format!("{bad} of {} relations fail", deps.len())));
        out.push(measured(format!("{id}.r{r}.relations"), "relations found / with a nonzero higher coefficient mod U(k)y (measured)", format!("{} / {nontrivial}", deps.len())));
    }
    out
}

/// `(-1)^j Delta^j = E^{2j} mod U(k)y` for `Delta = 2 X4 X2 - E^2`.
pub fn delta_identity(wb: &Workbench, j_max: u32) -> Vec<Check> {
    let (uk, md) = (wb.uk(), wb.mod_y());
    let (x2, x4, e) = (wb.el("X2"), wb.el("X4"), wb.el("E"));
    let delta = uk.mul(&x4, &x2).scale(&Q::from_int(2)).sub(&uk.mul(&e, &e));
    let commute = [(&x2, &x4), (&x2, &e), (&x4, &e)].iter().all(|(a, b)| uk.mul(a, b) == uk.mul(b, a));
    let bad: Vec<u32> = (0..=j_max)
        .filter(|&j| {
            let mut lhs = md.reduce(&uk.pow(&delta, j));
            if j % 2 == 1 {
                lhs = lhs.neg();
            }
            lhs != md.reduce(&uk.pow(&e, 2 * j))
        })
        .collect();
    vec![
        Check::new("delta.commute", "X2, X4 and E commute", commute),
        Check::new("delta.x1", "Xdot_1(Delta) = 0", uk.ad(&wb.lie("X1"), &delta).is_zero()),
        Check::with("delta.powers", "(-1)^j Delta^j = E^{2j} mod U(k)y", bad.is_empty(), || format!("j in {bad:?}")),
    ]
}

pub fn all(wb: &Workbench) -> Vec<Check> {
    let mut out = weight_vectors_in_mplus(wb, 3, &[(0, 0), (1, 0), (0, 1), (-1, 1), (1, -1), (0, 2)]);
    out.extend(parity_split(wb, 2, 3));
    out.extend(delta_identity(wb, 4));
    out
}
