//! F4 in epsilon coordinates, the restricted-root splitting for the real
//! form of real rank one, and the compact root system of the maximal compact
//! subalgebra with respect to the Cayley-transformed Cartan subalgebra.
//!
//! Weights of the compact Cartan subalgebra are written in the transported
//! coordinates `e~1..e~4`; a weight vector `[a, b, c, d]` means
//! `a e~1 + b e~2 + c e~3 + d e~4`.

use num_traits::Zero;
use serde::Serialize;

use super::{dot, RootDataError, RootSystem};
use crate::exactnum::Rational;

pub type Weight = Vec<Rational>;

/// Builds a weight from numerators over a common denominator.
pub fn w(num: [i64; 4], den: i64) -> Weight {
    num.iter().map(|&n| Rational::new(n, den)).collect()
}

/// Simple roots `a1 = (e1-e2-e3-e4)/2`, `a2 = e4`, `a3 = e3-e4`, `a4 = e2-e3`.
pub fn simple_roots() -> Vec<Weight> {
    vec![w([1, -1, -1, -1], 2), w([0, 0, 0, 1], 1), w([0, 0, 1, -1], 1), w([0, 1, -1, 0], 1)]
}

pub fn f4() -> RootSystem {
    RootSystem::from_simple_roots(simple_roots()).expect("F4 simple roots are valid")
}

/// The Cartan involution on weights: `e1 -> -e1`, others fixed.
pub fn theta(v: &[Rational]) -> Weight {
    let mut out = v.to_vec();
    out[0] = -out[0].clone();
    out
}

/// The restriction of a weight to the split part, in units of `e1`.
pub fn restriction(v: &[Rational]) -> Rational {
    v[0].clone()
}

/// `P+`: positive roots with nonzero restriction.
pub fn p_plus(rs: &RootSystem) -> Vec<Weight> {
    rs.positive().iter().map(|r| rs.ambient(r)).filter(|v| !restriction(v).is_zero()).collect()
}

/// `P-`: positive roots vanishing on the split part.
pub fn p_minus(rs: &RootSystem) -> Vec<Weight> {
    rs.positive().iter().map(|r| rs.ambient(r)).filter(|v| restriction(v).is_zero()).collect()
}

fn is_half(v: &[Rational]) -> bool {
    !v[0].is_integer()
}

fn minus_count(v: &[Rational]) -> usize {
    v.iter().filter(|x| x.is_negative()).count()
}

/// Combinatorial prediction of the compact roots: `+-e~i +- e~j` and the
/// half-integral roots with an even number of minus signs.
pub fn predicted_compact(v: &[Rational]) -> bool {
    if is_half(v) {
        minus_count(v) % 2 == 0
    } else {
        v.iter().filter(|x| !x.is_zero()).count() == 2
    }
}

/// All 48 roots in epsilon coordinates.
pub fn all_roots(rs: &RootSystem) -> Vec<Weight> {
    rs.roots().iter().map(|r| rs.ambient(r)).collect()
}

pub fn compact_roots(rs: &RootSystem) -> Vec<Weight> {
    all_roots(rs).into_iter().filter(|v| predicted_compact(v)).collect()
}

pub fn noncompact_roots(rs: &RootSystem) -> Vec<Weight> {
    all_roots(rs).into_iter().filter(|v| !predicted_compact(v)).collect()
}

/// The regular element `H+ = (0, 4, 2, 1)` defining the positive compact roots.
pub fn h_plus() -> Weight {
    w([0, 4, 2, 1], 1)
}

pub fn positive_compact(rs: &RootSystem) -> Vec<Weight> {
    let h = h_plus();
    compact_roots(rs).into_iter().filter(|v| dot(v, &h) > Rational::ZERO).collect()
}

/// Simple roots of the positive compact system (indecomposable positives).
pub fn simple_compact(rs: &RootSystem) -> Vec<Weight> {
    let pos = positive_compact(rs);
    pos.iter()
        .filter(|v| {
            !pos.iter().any(|a| {
                let rest: Weight = v.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                pos.contains(&rest)
            })
        })
        .cloned()
        .collect()
}

/// The compact root system rebuilt from its simple roots.
pub fn compact_system(rs: &RootSystem) -> Result<RootSystem, RootDataError> {
    RootSystem::from_simple_roots(simple_compact(rs))
}

/// Compatibility of `H+` with the ordering: every `a` in `P+` restricting to
/// the short restricted root with `a(H+) < 0`, other than `a1`, has `a - a1`
/// a root.
pub fn compatibility_holds(rs: &RootSystem) -> bool {
    let a1 = &simple_roots()[0];
    let h = h_plus();
    let roots = all_roots(rs);
    p_plus(rs).iter().filter(|v| restriction(v) == Rational::new(1, 2) && dot(v, &h) < Rational::ZERO && *v != a1).all(|v| {
        let d: Weight = v.iter().zip(a1).map(|(x, y)| x - y).collect();
        roots.contains(&d)
    })
}

/// Named weights of the compact Cartan subalgebra.
pub mod weights {
    use super::{w, Weight};

    pub fn delta() -> Weight {
        w([-1, 1, 0, 0], 1)
    }
    pub fn gamma1() -> Weight {
        w([1, 1, -1, -1], 2)
    }
    pub fn gamma2() -> Weight {
        w([0, 0, 1, 1], 1)
    }
    pub fn gamma3() -> Weight {
        w([1, 1, 1, 1], 2)
    }
    pub fn gamma4() -> Weight {
        w([1, 1, 0, 0], 1)
    }
    pub fn phi1() -> Weight {
        w([1, 0, 1, 0], 1)
    }
    pub fn delta1() -> Weight {
        w([-1, 0, 1, 0], 1)
    }
    pub fn phi2() -> Weight {
        w([1, 0, 0, 1], 1)
    }
    pub fn delta2() -> Weight {
        w([-1, 0, 0, 1], 1)
    }
    pub fn psi1() -> Weight {
        w([-1, 1, -1, 1], 2)
    }
    pub fn psi2() -> Weight {
        w([-1, 1, 1, -1], 2)
    }

    /// `xi(k, l) = (k/2)(gamma4 + delta) + l gamma3`.
    pub fn xi(k: i64, l: i64) -> Weight {
        let a = super::add(&gamma4(), &delta());
        let half_k = crate::exactnum::Rational::new(k, 2);
        let l = crate::exactnum::Rational::from_int(l);
        a.iter().zip(gamma3()).map(|(x, g)| &(&half_k * x) + &(&l * &g)).collect()
    }
}

pub fn add(a: &[Rational], b: &[Rational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Weight {
    a.iter().map(|x| x * s).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct F4Dump {
    pub simple_roots: Vec<Weight>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_type: String,
    pub positive_roots: Vec<Weight>,
    pub p_plus: Vec<Weight>,
    pub p_minus: Vec<Weight>,
    pub p_minus_type: String,
    pub compact_roots: Vec<Weight>,
    pub noncompact_roots: Vec<Weight>,
    pub positive_compact: Vec<Weight>,
    pub simple_compact: Vec<Weight>,
    pub compact_type: String,
    pub theta_images: Vec<(Weight, Weight)>,
}

pub fn dump() -> F4Dump {
    let rs = f4();
    let pm = p_minus(&rs);
    let pm_simple: Vec<Weight> =
        pm.iter().filter(|v| !pm.iter().any(|a| pm.contains(&sub(v, a)))).cloned().collect();
    let pm_type = RootSystem::from_simple_roots(pm_simple).map(|r| r.cartan_type()).unwrap_or_default();
    let positive: Vec<Weight> = rs.positive().iter().map(|r| rs.ambient(r)).collect();
    F4Dump {
        simple_roots: simple_roots(),
        cartan: rs.cartan().to_vec(),
        cartan_type: rs.cartan_type(),
        theta_images: positive.iter().map(|v| (v.clone(), theta(v))).collect(),
        positive_roots: positive,
        p_plus: p_plus(&rs),
        p_minus: pm,
        p_minus_type: pm_type,
        compact_roots: compact_roots(&rs),
        noncompact_roots: noncompact_roots(&rs),
        positive_compact: positive_compact(&rs),
        simple_compact: simple_compact(&rs),
        compact_type: compact_system(&rs).map(|r| r.cartan_type()).unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_counts() {
        let rs = f4();
        assert_eq!(rs.cartan_type(), "F4");
        assert_eq!(rs.num_roots(), 48);
        assert_eq!(p_plus(&rs).len(), 15);
        assert_eq!(p_minus(&rs).len(), 9);
        assert_eq!(compact_roots(&rs).len(), 32);
        assert_eq!(noncompact_roots(&rs).len(), 16);
        assert_eq!(positive_compact(&rs).len(), 16);
    }

    #[test]
    fn theta_is_an_involution_of_the_roots() {
        let rs = f4();
        let roots = all_roots(&rs);
        for v in &roots {
            assert!(roots.contains(&theta(v)));
            assert_eq!(theta(&theta(v)), *v);
        }
    }

    #[test]
    fn gamma4_plus_delta_is_twice_e2() {
        assert_eq!(add(&weights::gamma4(), &weights::delta()), w([0, 2, 0, 0], 1));
        assert_eq!(weights::xi(2, 0), w([0, 2, 0, 0], 1));
    }
}
