//! Checks on `U(g)`: Casimir centrality, low-degree `k`-invariants, the
//! projection `P` and cancellation modulo left ideals.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{express_in, invariants_up_to_degree, monomials_up_to, IwasawaElement, MonoIndex, Pbw, Uea, Workbench};
use crate::check::Check;
use crate::exactnum::sparse::rank_of;
use crate::exactnum::Rational;
use crate::liealg::{spaces, unit};

type Q = Rational;

fn measured(id: &str, anchor: &str, value: String) -> Check {
    let mut c = Check::new(id, anchor, true);
    c.witness = Some(value);
    c
}

/// `Xdot(Omega) = 0` on the basis of `g` and the named element `E`.
pub fn casimir(wb: &Workbench) -> Vec<Check> {
    let ug = wb.ug();
    let om = wb.casimir_g();
    let n = wb.model.g.dim();
    let bad: Vec<usize> = (0..n).filter(|&i| !ug.ad_gen(i, &om).is_zero()).collect();
    vec![
        Check::new("casimir.e", "Edot(Omega) = 0", ug.ad(&wb.k_in_g(&wb.lie("E")), &om).is_zero()),
        Check::with("casimir.central", "Xdot(Omega) = 0 for every basis element of g", bad.is_empty(), || format!("{bad:?}")),
    ]
}

/// Basis of `U_2(g)^k` together with the containment of `1`, `Omega` and `Casimir(k)`.
pub fn invariants_u2(wb: &Workbench) -> (Vec<Uea>, Vec<Check>) {
    let ug = wb.ug();
    let nk = wb.model.dim_k();
    let n = wb.model.g.dim();
    let k: Vec<Vec<Q>> = (0..nk).map(|i| unit(n, i)).collect();
    let basis = invariants_up_to_degree(ug, &k, 2);
    let om = wb.casimir_g();
    let ck = wb.casimir_k();
    let checks = vec![
        Check::new("invariants.one", "1 lies in U_2(g)^k", express_in(&basis, &Uea::one()).is_some()),
        Check::new("invariants.omega", "Omega lies in U_2(g)^k", express_in(&basis, &om).is_some()),
        Check::new("invariants.cas_k", "Casimir(k) lies in U_2(g)^k", express_in(&basis, &ck).is_some()),
        Check::eq("invariants.dim", "dim U_2(g)^k", basis.len(), 3),
    ];
    (basis, checks)
}

/// `P(uv) = P(v) P(u)` on pairs from a basis of `U_2(g)^k`.
pub fn antihomomorphism(wb: &Workbench, basis: &[Uea]) -> Vec<Check> {
    let ug = wb.ug();
    let mut bad = Vec::new();
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let lhs = wb.project(&ug.mul(u, v));
            let rhs = wb.project(v).mul(&wb.project(u), wb.uk());
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    vec![Check::with("antihom", "P(uv) = P(v) P(u) on U_2(g)^k", bad.is_empty(), || format!("{bad:?}"))]
}

/// A seeded element of `U_m(g)`: a combination of products of `m` or
/// fewer random basis elements, in random order.
pub fn random_element(ug: &Pbw, m: u32, terms: usize, rng: &mut impl Rng) -> Uea {
    let mut u = Uea::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=m);
        let factors: Vec<Uea> = (0..len).map(|_| Uea::gen(rng.gen_range(0..ug.dim()))).collect();
        let refs: Vec<&Uea> = factors.iter().collect();
        let c = Q::from_int(rng.gen_range(-3..=3));
        u.axpy(&c, &ug.mul_all(&refs));
    }
    u
}

/// `P(U_m(g))` lies in `sum_l U_{m-l}(k) Z^l`.
pub fn projection_degrees(wb: &Workbench, seed: u64, samples: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for m in 1..=3u32 {
        let mut bad = Vec::new();
        for s in 0..samples {
            let u = random_element(wb.ug(), m, 4, &mut rng);
            let p: IwasawaElement = wb.project(&u);
            let ok = p.degree().map_or(true, |d| d <= m as usize)
                && p.coeffs.iter().enumerate().all(|(l, c)| c.degree().map_or(true, |d| d as usize + l <= m as usize));
            if !ok {
                bad.push(s);
            }
        }
        out.push(Check::with(format!("projection.degree{m}"), "P(U_m(g)) lies in sum_l U_{m-l}(k) Z^l", bad.is_empty(), || format!("samples {bad:?}")));
    }
    let z = Uea::gen(wb.z_label());
    let z2 = wb.ug().mul(&z, &z);
    let want = IwasawaElement::new(vec![Uea::zero(), Uea::zero(), Uea::one()]);
    out.push(Check::eq("projection.z2", "P(Z^2) = 1 (x) Z^2", wb.project(&z2), want));
    let nk = wb.model.dim_k();
    let n_zero = (nk + 1..wb.model.g.dim()).all(|i| wb.project(&Uea::gen(i)).is_zero());
    out.push(Check::new("projection.n", "P(X) = 0 for X in n", n_zero));
    out
}

/// Cancellation: for `X` outside a left ideal generated by a basis suffix
/// `l` with `[X, l]` in `l`, right multiplication by `X^n` is injective on
/// `U_r(k)` modulo `U(k)l`. Checked as a rank statement on reduced monomials.
pub fn cancellation(wb: &Workbench, r: u32, n_max: u32) -> Vec<Check> {
    let model = &wb.model;
    let mut out = Vec::new();
    let cases = [("y", model.y_start, wb.mod_y()), ("m+", model.mplus_start, wb.mod_mplus())];
    for (name, start, engine) in cases {
        let ideal: Vec<Vec<Q>> = (start..model.dim_k()).map(|i| unit(model.dim_k(), i)).collect();
        let xs: Vec<usize> = (0..start)
            .filter(|&i| ideal.iter().all(|y| spaces::contains(&ideal, &model.bracket_k(&unit(model.dim_k(), i), y))))
            .collect();
        let monos: Vec<Uea> = monomials_up_to(start, r).into_iter().map(|m| Uea::term(m, Q::one())).collect();
        let mut bad = Vec::new();
        for &x in &xs {
            for e in 1..=n_max {
                let mut idx = MonoIndex::default();
                let xe = engine.pow(&Uea::gen(x), e);
                let rank = rank_of(monos.iter().map(|u| idx.encode(&engine.mul(u, &xe), 0, 0)));
                if rank != monos.len() {
                    bad.push((model.k.name(x).to_string(), e));
                }
            }
        }
        out.push(Check::with(
            format!("cancellation.{name}"),
            "u X^n in U(k)l implies u in U(k)l, for X normalizing l",
            bad.is_empty() && !xs.is_empty(),
            || format!("{} normalizing elements, failures {bad:?}", xs.len()),
        ));
    }
    out
}

/// `omega = scale * P(Omega)` with `omega_2 = 1`, `omega_1` a nonzero
/// scalar and `omega_0` in the span of `Casimir(m)` and `1`.
pub fn omega_shape(wb: &Workbench) -> Vec<Check> {
    let om = match wb.omega() {
        Ok(o) => o,
        Err(e) => return vec![Check::with("omega.shape", "P(Omega) normalizes to omega_2 = 1, omega_1 nonzero scalar, omega_0 in span{Casimir(m), 1}", false, || e)],
    };
    let from_projection = wb.project(&wb.casimir_g_projected()).scale(&om.scale);
    let coeff = |j: usize| om.omega.coeffs.get(j).and_then(Uea::as_scalar);
    let rebuilt = wb.casimir_m().scale(&om.casimir_coeff).add(&Uea::one().scale(&om.constant));
    vec![
        Check::eq("omega.degree", "P(Omega) has Z-degree 2", om.omega.degree(), Some(2)),
        Check::eq("omega.top", "omega_2 = 1", coeff(2), Some(Q::one())),
        Check::with("omega.linear", "omega_1 is a nonzero multiple of 1", coeff(1).is_some_and(|c| !c.is_zero()), || format!("{:?}", coeff(1))),
        Check::eq("omega.constant", "omega_0 = a Casimir(m) + c", om.omega.coeffs[0].clone(), rebuilt),
        Check::eq("omega.projection", "omega is a scalar multiple of P(Omega)", om.omega.clone(), from_projection),
        measured("omega.values", "scale, omega_1, Casimir(m) coefficient and constant of omega_0 (measured)", format!("{} / {} / {} / {}", om.scale, om.omega1, om.casimir_coeff, om.constant)),
    ]
}

pub fn all(wb: &Workbench, seed: u64) -> Vec<Check> {
    let mut out = casimir(wb);
    out.extend(omega_shape(wb));
    let (basis, checks) = invariants_u2(wb);
    out.extend(checks);
    out.extend(antihomomorphism(wb, &basis));
    out.extend(projection_degrees(wb, seed, 6));
    out.extend(cancellation(wb, 2, 2));
    out
}
