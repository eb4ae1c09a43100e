//! Randomized identities in `U(g)` and `U(k)` on the F4 model. The model is
//! built once per test and shared by the cases of a manual test runner.

use f4wb::uea::{Pbw, Uea, Workbench};
use f4wb::Rational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

/// Element of `U_d` on the first `dim` generators, as a list of
/// `(coefficient, word)` pairs.
fn words(dim: usize, d: usize, terms: usize) -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..dim, 0..=d)), 1..=terms)
}

fn build(pbw: &Pbw, ws: &[(i64, Vec<usize>)]) -> Uea {
    ws.iter().fold(Uea::zero(), |acc, (c, w)| {
        let gens: Vec<Uea> = w.iter().map(|&i| Uea::gen(i)).collect();
        let refs: Vec<&Uea> = gens.iter().collect();
        acc.add(&pbw.mul_all(&refs).scale(&Rational::from_int(*c)))
    })
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()
}

#[test]
fn products_are_associative() {
    let wb = Workbench::build().unwrap();
    for pbw in [wb.uk(), wb.ug()] {
        let dim = pbw.dim();
        runner(24)
            .run(&(words(dim, 3, 2), words(dim, 3, 2), words(dim, 3, 2)), |(a, b, c)| {
                let (a, b, c) = (build(pbw, &a), build(pbw, &b), build(pbw, &c));
                prop_assert_eq!(pbw.mul(&pbw.mul(&a, &b), &c), pbw.mul(&a, &pbw.mul(&b, &c)));
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn adjoint_action_is_a_derivation_and_a_representation() {
    let wb = Workbench::build().unwrap();
    let uk = wb.uk();
    let alg = &wb.model.k;
    let dim = uk.dim();
    runner(32)
        .run(&(0..dim, 0..dim, words(dim, 2, 2), words(dim, 2, 2)), |(i, j, u, v)| {
            let (u, v) = (build(uk, &u), build(uk, &v));
            let (x, y) = (basis_vector(dim, i), basis_vector(dim, j));
            let lhs = uk.ad(&x, &uk.mul(&u, &v));
            let rhs = uk.mul(&uk.ad(&x, &u), &v).add(&uk.mul(&u, &uk.ad(&x, &v)));
            prop_assert_eq!(lhs, rhs);
            let xy = alg.bracket(&x, &y);
            let comm = uk.ad(&x, &uk.ad(&y, &u)).sub(&uk.ad(&y, &uk.ad(&x, &u)));
            prop_assert_eq!(comm, uk.ad(&xy, &u));
            Ok(())
        })
        .unwrap();
}

#[test]
fn normal_forms_are_idempotent_and_respect_left_ideals() {
    let wb = Workbench::build().unwrap();
    let uk = wb.uk();
    let dim = uk.dim();
    for md in [wb.mod_mplus(), wb.mod_y()] {
        runner(24)
            .run(&(words(dim, 3, 3), words(dim, 2, 2)), |(u, a)| {
                let (u, a) = (build(uk, &u), build(uk, &a));
                let r = md.reduce(&u);
                prop_assert_eq!(md.reduce(&r), r.clone());
                // Left multiplication is compatible with reduction modulo a left ideal.
                prop_assert_eq!(md.reduce(&uk.mul(&a, &u)), md.reduce(&uk.mul(&a, &r)));
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn projection_respects_the_filtration() {
    let wb = Workbench::build().unwrap();
    let ug = wb.ug();
    let dim = ug.dim();
    runner(16)
        .run(&(0usize..=3).prop_flat_map(move |m| (Just(m), words(dim, m, 3))), |(m, u)| {
            let u = build(ug, &u);
            let p = wb.project(&u);
            prop_assert!(p.degree().map_or(true, |d| d <= m));
            for (l, c) in p.coeffs.iter().enumerate() {
                prop_assert!(c.degree().map_or(true, |d| d as usize + l <= m), "Z^{} coefficient has degree {:?}", l, c.degree());
            }
            Ok(())
        })
        .unwrap();
}
