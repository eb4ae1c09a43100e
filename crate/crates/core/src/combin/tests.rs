use proptest::prelude::*;

use super::*;

/// Pascal's triangle, independent of the product formula.
fn pascal(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::ZERO;
    }
    let mut row = vec![Rational::ONE];
    for _ in 0..n {
        let mut next = vec![Rational::ONE; row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[k as usize].clone()
}

#[test]
fn profile_table_matches_floor_formula() {
    for m in 0..=4u32 {
        let p = DegreeProfile::new(m);
        assert_eq!(p.dr.len() as u32, m + 1);
        for (r, d) in p.dr.iter().enumerate() {
            let x = (3.0 * f64::from(m) - 2.0 * r as f64 + 2.0) / 2.0;
            assert_eq!(*d, x.floor() as u32, "m = {m}, r = {r}");
        }
    }
    assert_eq!(DegreeProfile::new(2).dr, vec![4, 3, 2]);
    assert_eq!(DegreeProfile::new(1).dr, vec![2, 1]);
    assert_eq!(DegreeProfile::new(0).d0(), 1);
}

#[test]
fn index_sets_match_definitions() {
    for m in 0..=3u32 {
        let d0 = (3 * m + 2) / 2;
        for t in 0..=2 * d0 + 1 {
            for n in 0..=t + 1 {
                let res = index_sets(m, t, n);
                let valid = m <= t && t <= 2 * d0 && n <= t.min(2 * d0 - t);
                assert_eq!(res.is_ok(), valid, "m={m} T={t} n={n}");
                let Ok(s) = res else { continue };
                let l: Vec<u32> = (0..=20).filter(|&x| x + n <= (2 * m).min(t) && (x % 2) != (n % 2)).collect();
                let r: Vec<u32> = (0..=20).filter(|&x| x + n <= t.min(2 * d0 - t) && x <= m && x % 2 == (t - n) % 2).collect();
                let rt: Vec<u32> = r.iter().copied().filter(|&x| (t - n) % 2 == 1 || 2 * x < t + n).collect();
                assert_eq!((s.l, s.r, s.r_tilde), (l, r, rt), "m={m} T={t} n={n}");
            }
        }
    }
    let s = index_sets(3, 4, 4).unwrap();
    assert!(s.r.iter().all(|&r| r == 0));
}

#[test]
fn generalized_matrix_small_cases() {
    let one = generalized_a_matrix::<Rational>(&[0], 0).unwrap();
    assert_eq!(one[0][0], Poly::constant(Rational::ONE));
    let e = &generalized_a_matrix::<Rational>(&[1], 1).unwrap()[0][0];
    assert_eq!(e, &Poly::new(vec![Rational::from_int(-2), Rational::ONE]));
    assert!(generalized_a_matrix::<Rational>(&[2, 1], 0).is_err());
    assert!(system_matrix::<Rational>(4, 4, 3, false).unwrap().cols.len() <= 1);
}

#[test]
fn generalized_entries_evaluate_like_the_double_sum() {
    for li in 0..=6u32 {
        for j in 0..=3u32 {
            for delta in 0..2 {
                let p = generalized_entry::<Rational>(li, j, delta);
                for s in 0..=12i64 {
                    let top = i64::from(2 * j + delta);
                    let want = (0..=i64::from(li).min(top)).fold(Rational::ZERO, |acc, l| {
                        acc + Rational::from_int(-2).pow(l as u32) * pascal(li.into(), l) * pascal(s - l, top - l)
                    });
                    if s >= top {
                        assert_eq!(p.eval(&Rational::from_int(s)), want, "L={li} j={j} delta={delta} s={s}");
                    }
                }
            }
        }
    }
}

#[test]
fn determinants_split_for_small_sequences() {
    for r in determinant_table(3, 6) {
        assert!(r.splits || r.identically_zero, "{:?} delta {}", r.lseq, r.delta);
    }
}

#[test]
fn generic_matrix_over_quadratic_field() {
    let q = system_matrix::<crate::QSqrt2>(3, 1, 2, false).unwrap();
    let r = system_matrix::<Rational>(3, 1, 2, false).unwrap();
    assert_eq!(q.entries.to_rows().len(), r.entries.to_rows().len());
    for (a, b) in q.entries.to_rows().iter().flatten().zip(r.entries.to_rows().iter().flatten()) {
        assert_eq!(a.to_rational().as_ref(), Some(b));
    }
}

proptest! {
    #[test]
    fn binomials_agree_with_pascal(n in -3i64..14, k in -3i64..14) {
        prop_assert_eq!(binom(n, k), pascal(n, k));
    }

    #[test]
    fn coefficient_a_vanishes_outside_its_range(i in 0i64..6, r in 0i64..6, t in 0i64..8, n in 0i64..4, l in 0i64..4) {
        let c = coefficient_a(i, r, t, n, l);
        if !c.in_range {
            prop_assert!(c.value.is_zero());
        }
    }

    #[test]
    fn system_entry_is_the_generalized_entry(t in 0u32..9, n in 0u32..5, big_l in 0u32..7, j in 0u32..4) {
        prop_assume!(n <= t);
        let delta = (t - n) % 2;
        let r = 2 * j + delta;
        prop_assume!(big_l <= t - n && r <= t - n);
        let s = Rational::from_int((t - n).into());
        prop_assert_eq!(system_entry(big_l.into(), r.into(), t.into(), n.into()), generalized_entry::<Rational>(big_l, j, delta).eval(&s));
    }
}

#[test]
fn battery_passes() {
    let wb = crate::uea::Workbench::build().unwrap();
    let checks = battery::all(&wb, 11);
    for c in &checks {
        eprintln!("{} {:?} {:?}", c.id, c.status, c.witness);
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
