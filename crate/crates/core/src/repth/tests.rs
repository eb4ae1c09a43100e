use super::*;
use crate::exactnum::SparseVec as Sv;
use crate::liealg::LieAlgebra;

/// sl2 with basis order (f, h, e).
fn sl2() -> LieAlgebra<Q> {
    let mut t = vec![vec![Sv::new(); 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, c: i64| {
        t[i][j].insert(k, Q::from_int(c));
        t[j][i].insert(k, Q::from_int(-c));
    };
    set(1, 2, 2, 2);
    set(1, 0, 0, -2);
    set(2, 0, 1, 1);
    LieAlgebra::new(vec!["f".into(), "h".into(), "e".into()], t)
}

fn unit(i: usize) -> Vq {
    crate::liealg::unit(3, i)
}

#[test]
fn sl2_modules() {
    let alg = sl2();
    let two = vec![Q::from_int(2)];
    let b = Backend::new(&alg, vec![unit(1)], vec![(two.clone(), unit(2), unit(0))], vec![two]).unwrap();
    for n in 0..6 {
        let v = build_irrep(&b, &[Q::from_int(n)], 64, ScanOrder::Forward).unwrap();
        assert_eq!(v.dim(), n as usize + 1);
        assert_eq!(b.weyl_dimension(&[Q::from_int(n)]), Q::from_int(n + 1));
        assert!(v.bracket_defect(&alg).is_none());
        assert!(v.cartan_diagonal(&b));
    }
    assert!(matches!(build_irrep(&b, &[Q::new(1, 2)], 64, ScanOrder::Forward), Err(RepthError::NotDominant(_))));
    assert!(matches!(build_irrep(&b, &[Q::from_int(9)], 4, ScanOrder::Forward), Err(RepthError::TooLarge { .. })));
}

#[test]
fn spectral_parts_split_eigenvectors() {
    let wb = Workbench::build().unwrap();
    let uk = wb.uk();
    let t1 = wb.lie("t1");
    let u = wb.el("Xdelta").add(&wb.el("E")).add(&Uea::one());
    let parts = spectral_parts(&u, |x| uk.ad(&t1, x)).unwrap();
    let total = parts.iter().fold(Uea::zero(), |acc, (_, p)| acc.add(p));
    assert_eq!(total, u);
    for (l, p) in &parts {
        assert_eq!(uk.ad(&t1, p), p.scale(l));
    }
}

#[test]
fn small_modules_and_labels() {
    let wb = Workbench::build().unwrap();
    let r = Repth::new(&wb).unwrap();
    let spin = r.irrep_label(KTypeLabel::new(1, 0)).unwrap();
    assert_eq!(spin.dim(), 16);
    let vector = r.irrep_label(KTypeLabel::new(0, 1)).unwrap();
    assert_eq!(vector.dim(), 9);
    assert_eq!(r.m_invariants(&vector).len(), 1);
    assert_eq!(r.xi_label(&KTypeLabel::new(3, 2).xi()), Some(KTypeLabel::new(3, 2)));
    let checks = battery::irreps(&r, &[(0, 0), (1, 0), (0, 1)]);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn battery_passes() {
    let wb = Workbench::build().unwrap();
    let r = Repth::new(&wb).unwrap();
    let checks = battery::all(&r);
    for c in &checks {
        if c.witness.is_some() {
            eprintln!("{} {:?} {:?}", c.id, c.status, c.witness);
        }
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
