use super::*;
use crate::exactnum::SparseVec;
use crate::rootdata::{standard_cartan, RootSystem};
use crate::liealg::Chevalley;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// sl2 with basis order (f, h, e).
fn sl2() -> LieAlgebra<Rational> {
    let mut t = vec![vec![SparseVec::new(); 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, c: i64| {
        t[i][j].insert(k, q(c));
        t[j][i].insert(k, q(-c));
    };
    set(1, 2, 2, 2); // [h,e] = 2e
    set(1, 0, 0, -2); // [h,f] = -2f
    set(2, 0, 1, 1); // [e,f] = h
    LieAlgebra::new(vec!["f".into(), "h".into(), "e".into()], t)
}

#[test]
fn sl2_straightening() {
    let p = Pbw::new(&sl2());
    let ef = p.mul(&Uea::gen(2), &Uea::gen(0));
    let want = Uea::term(Mono(vec![(0, 1), (2, 1)]), q(1)).add(&Uea::gen(1));
    assert_eq!(ef, want);
    assert_eq!(p.mul(&Uea::gen(2), &Uea::one()), Uea::gen(2));
    // e^2 f = f e^2 + 2 h e - 2 e
    let e2f = p.mul(&Uea::term(Mono::power(2, 2), q(1)), &Uea::gen(0));
    let want = Uea::term(Mono(vec![(0, 1), (2, 2)]), q(1))
        .add(&Uea::term(Mono(vec![(1, 1), (2, 1)]), q(2)))
        .add(&Uea::term(Mono::gen(2), q(-2)));
    assert_eq!(e2f, want);
}

#[test]
fn sl2_casimir_is_central_and_invariants_match() {
    let alg = sl2();
    let p = Pbw::new(&alg);
    let om = casimir(&alg, &p).unwrap();
    for i in 0..3 {
        assert!(p.ad_gen(i, &om).is_zero());
    }
    let gens: Vec<Vq> = (0..3).map(|i| crate::liealg::unit(3, i)).collect();
    let inv = invariants_up_to_degree(&p, &gens, 2);
    assert_eq!(inv.len(), 2);
    assert!(express_in(&inv, &om).is_some());
    assert!(express_in(&inv, &Uea::one()).is_some());
    assert_eq!(invariants_up_to_degree(&p, &gens, 0).len(), 1);
}

#[test]
fn associativity_in_b2() {
    let ch = Chevalley::new(RootSystem::from_cartan(standard_cartan('B', 2)).unwrap());
    let p = Pbw::new(&ch.alg);
    let a = p.mul(&Uea::gen(5), &Uea::gen(2)).add(&Uea::gen(9));
    let b = p.mul(&Uea::gen(7), &Uea::gen(3));
    let c = p.mul(&Uea::gen(4), &Uea::gen(8)).add(&Uea::gen(6));
    assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)));
}

#[test]
fn ideal_normal_form_reconstructs() {
    let alg = sl2();
    let p = Pbw::new(&alg);
    let u = p.mul_all(&[&Uea::gen(2), &Uea::gen(0), &Uea::gen(1), &Uea::gen(2)]);
    let nf = ideal_normal_form(&u, 2, 3);
    let mut back = nf.reduced.clone();
    back.axpy(&q(1), &p.mul(&nf.components[0], &Uea::gen(2)));
    assert_eq!(back, u);
    assert!(nf.reduced.iter().all(|(m, _)| m.exponent(2) == 0));
    assert_eq!(ideal_normal_form(&nf.reduced, 2, 3).reduced, nf.reduced);
}

#[test]
fn truncated_engine_agrees_with_full_reduction() {
    let ch = Chevalley::new(RootSystem::from_cartan(standard_cartan('B', 2)).unwrap());
    // basis: h1 h2 then roots; positive roots come last and span a subalgebra
    let full = Pbw::new(&ch.alg);
    let r = ch.rank() + ch.rs.roots().len() - ch.rs.positive().len();
    let order_ok = (r..ch.dim()).all(|i| ch.alg.name(i).starts_with("e["));
    assert!(order_ok);
    let pos_start = ch.dim() - ch.rs.positive().len();
    let tr = Pbw::truncated(&ch.alg, pos_start);
    let u = full.mul_all(&[&Uea::gen(9), &Uea::gen(2), &Uea::gen(0)]);
    let v = full.mul(&Uea::gen(3), &Uea::gen(8));
    let exact = full.mul(&u, &v).truncate(pos_start);
    assert_eq!(tr.mul(&u, &v), exact);
}

#[test]
fn f4_model_derivations_and_omega() {
    let wb = Workbench::build().unwrap();
    let uk = wb.uk();
    let e = wb.el("E");
    assert_eq!(uk.ad(&wb.lie("E"), &wb.el("Ytilde")), e);
    assert_eq!(uk.ad(&wb.lie("Xdelta"), &wb.el("Ytilde")), wb.el("Xdelta"));
    assert!(uk.ad(&wb.lie("E"), &Uea::one()).is_zero());

    let om = wb.omega().unwrap();
    assert_eq!(om.omega.coeffs[2], Uea::one());
    assert!(!om.omega1.is_zero());
    for x in wb.model.m_basis() {
        assert!(uk.ad(&x, &om.omega.coeffs[0]).is_zero());
    }
}

#[test]
fn g_level_battery() {
    let wb = Workbench::build().unwrap();
    let checks = battery::all(&wb, 7);
    for c in checks.iter().filter(|c| c.witness.is_some()) {
        eprintln!("{} {:?} {:?}", c.id, c.status, c.witness);
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
