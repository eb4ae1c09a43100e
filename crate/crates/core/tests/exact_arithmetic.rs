use f4wb::exactnum::{poly_det, Matrix, Poly};
use f4wb::{Field, QSqrt2, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn nonzero_den() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..=1000, -1000i64..=-1, Just(i64::MAX), Just(i64::MIN + 1)]
}

fn any_num() -> impl Strategy<Value = i64> {
    prop_oneof![-1000i64..=1000, Just(i64::MAX), Just(i64::MIN + 1), any::<i64>().prop_map(|x| x / 2)]
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn q2() -> impl Strategy<Value = QSqrt2> {
    (small_q(), small_q()).prop_map(|(a, b)| QSqrt2::new(a, b))
}

/// Laplace expansion along the first row.
fn cofactor_det<F: Field>(m: &[Vec<F>]) -> F {
    if m.is_empty() {
        return F::one();
    }
    let mut acc = F::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<F>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].clone() * cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n).prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(Rational::from_int).collect()).collect())
}

proptest! {
    #[test]
    fn rational_ops_match_big_rationals(a in any_num(), b in nonzero_den(), c in any_num(), d in nonzero_den()) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn rational_display_round_trips(a in any_num(), b in nonzero_den()) {
        let x = Rational::new(a, b);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn quadratic_field_axioms(x in q2(), y in q2(), z in q2()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!((x.clone() * y.clone()).norm(), &x.norm() * &y.norm());
        if let Some(inv) = x.inverse() {
            prop_assert_eq!(x * inv, QSqrt2::from(1));
        } else {
            prop_assert_eq!(x, QSqrt2::from(0));
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(square)) {
        prop_assert_eq!(Matrix::from_rows(m.clone()).det(), cofactor_det(&m));
    }

    #[test]
    fn rank_plus_nullity(m in (1usize..=4).prop_flat_map(square)) {
        let mat = Matrix::from_rows(m.clone());
        prop_assert_eq!(mat.rank() + mat.kernel().len(), m.len());
        for v in mat.kernel() {
            prop_assert!(mat.apply(&v).iter().all(|x| x == &Rational::ZERO));
        }
    }

    #[test]
    fn polynomial_determinant_evaluates_pointwise(
        entries in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 9),
        n in 1usize..=3,
        s in -5i64..=5,
    ) {
        let polys: Vec<Vec<Poly<Rational>>> = (0..n)
            .map(|i| (0..n).map(|j| Poly::new(entries[3 * i + j].iter().map(|&c| Rational::from_int(c)).collect())).collect())
            .collect();
        let at: Vec<Vec<Rational>> = polys.iter().map(|r| r.iter().map(|p| p.eval(&Rational::from_int(s))).collect()).collect();
        prop_assert_eq!(poly_det(&polys).eval(&Rational::from_int(s)), cofactor_det(&at));
    }

    #[test]
    fn surd_matrices_invert(a in small_q(), b in small_q(), c in small_q(), d in small_q()) {
        let m = Matrix::from_rows(vec![
            vec![QSqrt2::new(a.clone(), b.clone()), QSqrt2::sqrt2()],
            vec![QSqrt2::new(c.clone(), Rational::ZERO), QSqrt2::new(d.clone(), a.clone())],
        ]);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(2)),
            None => prop_assert!(m.det() == QSqrt2::from(0)),
        }
    }
}
