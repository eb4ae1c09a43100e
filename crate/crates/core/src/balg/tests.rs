use super::*;
use num_traits::Zero;
use crate::exactnum::{factorial, Poly};

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[test]
fn phi_basis_properties() {
    assert_eq!(phi(1), Poly::var());
    assert_eq!(phi(2), Poly::new(vec![q(0, 1), q(0, 1), q(1, 2)]));
    for n in 1..8 {
        assert!(phi(n).eval(&Q::ZERO).is_zero());
        assert_eq!(discrete_derivative_scalar(&phi(n), 1), phi(n - 1));
    }
}

#[test]
fn discrete_derivative_of_monomials() {
    assert_eq!(discrete_derivative_scalar(&Poly::var(), 1), Poly::constant(Q::one()));
    for m in 1..7usize {
        let mut c = vec![Q::ZERO; m + 1];
        c[m] = Q::one();
        let p = Poly::new(c);
        assert_eq!(discrete_derivative_scalar(&p, m), Poly::constant(factorial(m as u64)));
        assert!(discrete_derivative_scalar(&p, m + 1).is_zero());
    }
}

#[test]
fn omega_lies_in_b() {
    let wb = Workbench::build().unwrap();
    let s = Setup::new(&wb);
    let om = wb.omega().unwrap().omega;
    let rep = s.check_b_membership(&om, default_n_max(&om)).unwrap();
    assert!(rep.passed, "{:?}", rep.first_failure());
    let c = s.shift_substitute(&to_poly(&om));
    let tri = s.check_triangular(&c);
    assert!(tri.passed, "{:?}", tri.first_failure());
    let e1 = IwasawaElement::new(vec![wb.el("E")]);
    assert!(!s.check_b_membership(&e1, 2).unwrap().passed);
}

#[test]
fn battery_passes() {
    let wb = Workbench::build().unwrap();
    let checks = battery::all(&wb, None);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn congruences_hold() {
    let wb = Workbench::build().unwrap();
    let checks = congruence::all(&wb);
    for c in checks.iter().filter(|c| c.witness.is_some()) {
        eprintln!("{} {:?} {:?}", c.id, c.status, c.witness);
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
