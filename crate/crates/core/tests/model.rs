use std::collections::BTreeSet;

use f4wb::repth::Repth;
use f4wb::rootdata::f4;
use f4wb::uea::Workbench;
use f4wb::Rational;

type Q = Rational;

/// The F4 roots in the standard realization: `+-e_i`, `+-e_i +- e_j` and
/// `(+-1/2, +-1/2, +-1/2, +-1/2)`.
fn standard_f4_roots() -> BTreeSet<Vec<Q>> {
    let mut out = BTreeSet::new();
    let unit = |i: usize, s: i64| (0..4).map(|k| if k == i { Q::from_int(s) } else { Q::ZERO }).collect::<Vec<_>>();
    for i in 0..4 {
        for s in [1, -1] {
            out.insert(unit(i, s));
            for j in i + 1..4 {
                for t in [1, -1] {
                    let v: Vec<Q> = unit(i, s).iter().zip(unit(j, t)).map(|(a, b)| a + &b).collect();
                    out.insert(v);
                }
            }
        }
    }
    for signs in 0..16 {
        out.insert((0..4).map(|k| Q::new(if signs >> k & 1 == 1 { -1 } else { 1 }, 2)).collect());
    }
    out
}

#[test]
fn root_system_matches_the_standard_realization() {
    let rs = f4::f4();
    let ours: BTreeSet<Vec<Q>> = f4::all_roots(&rs).into_iter().collect();
    assert_eq!(ours.len(), 48);
    assert_eq!(ours, standard_f4_roots());
    assert_eq!(rs.cartan_type(), "F4");
}

#[test]
fn compact_and_noncompact_roots_partition() {
    let rs = f4::f4();
    let (c, n) = (f4::compact_roots(&rs), f4::noncompact_roots(&rs));
    assert_eq!((c.len(), n.len()), (32, 16));
    // The split is a Z/2 grading: sums that are roots add the parities.
    let roots: BTreeSet<Vec<Q>> = standard_f4_roots();
    let compact: BTreeSet<&Vec<Q>> = c.iter().collect();
    for a in c.iter().chain(&n) {
        for b in c.iter().chain(&n) {
            let s: Vec<Q> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if roots.contains(&s) {
                assert_eq!(compact.contains(&s), compact.contains(a) == compact.contains(b), "{a:?} + {b:?}");
            }
        }
    }
}

#[test]
fn lie_algebras_satisfy_the_axioms() {
    let wb = Workbench::build().unwrap();
    let m = &wb.model;
    for alg in [&m.ch.alg, &m.g, &m.k] {
        alg.check_antisymmetry().unwrap();
        alg.check_jacobi().unwrap();
    }
    assert_eq!((m.g.dim(), m.k.dim()), (52, 36));
    assert!(m.killing_g.det() != Q::ZERO);
}

#[test]
fn fundamental_representations_of_k_have_the_b4_dimensions() {
    let wb = Workbench::build().unwrap();
    let r = Repth::new(&wb).unwrap();
    let mut dims: Vec<Q> = r.fundamental_weights().iter().map(|w| r.weyl_dimension(w)).collect();
    dims.sort();
    assert_eq!(dims, [9, 16, 36, 84].map(Q::from_int));
    let zero = vec![Q::ZERO; 4];
    assert_eq!(r.weyl_dimension(&zero), Q::ONE);
}
