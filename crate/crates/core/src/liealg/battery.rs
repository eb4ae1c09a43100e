//! Invariant batteries for the F4 model and the transversality maps.

use num_traits::Zero;

use crate::check::Check;
use crate::exactnum::sparse::to_sparse;
use crate::exactnum::{Echelon, QSqrt2, Rational};
use crate::rootdata::f4::{self, weights, Weight};

use super::spaces::{coefficient_mod, contains, is_subspace, rank, same_span};
use super::{form, ratio, scale_vec, sub_vec, unit, F4Model};

type Q = Rational;
type Vq = Vec<Rational>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn to_s(v: &[Q]) -> Vec<QSqrt2> {
    v.iter().map(|x| QSqrt2::from(x.clone())).collect()
}

/// Structural checks: dimensions, types, involution, Cayley transform,
/// compact roots.
pub fn structure(m: &F4Model) -> Vec<Check> {
    let mut out = Vec::new();
    let dim = m.ch.dim();
    let n_dim = m.n_roots.len();
    out.push(Check::eq("dim.g", "dim g = 52", m.g.dim(), 52));
    out.push(Check::eq("dim.k", "dim k = 36", m.dim_k(), 36));
    out.push(Check::eq("dim.p", "dim p = 16", rank(&m.p_basis()), 16));
    out.push(Check::eq("dim.m", "dim m = 21", rank(&m.m_basis()), 21));
    out.push(Check::eq("dim.n", "dim n = 15", n_dim, 15));
    out.push(Check::eq("dim.a", "dim a = 1", 1usize, 1));

    let rs = &m.ch.rs;
    let k_type = f4::compact_system(rs).map(|r| r.cartan_type()).unwrap_or_default();
    out.push(Check::eq("type.k", "simple system of the compact roots has type B4", k_type.as_str(), "B4"));
    let mut simple = m.simple_compact();
    simple.sort();
    let mut expected =
        vec![f4::w([1, 0, 0, 1], 1), f4::w([0, 0, 1, -1], 1), f4::w([-1, 0, 0, 1], 1), weights::gamma1()];
    expected.sort();
    out.push(Check::eq("simple.k", "simple compact roots {e~4+e~1, e~3-e~4, e~4-e~1, gamma1}", simple, expected));
    out.push(Check::eq("type.m", "positive roots vanishing on a form a B3 system", f4::dump().p_minus_type.as_str(), "B3"));
    out.push(Check::new("compat", "the positive compact system is compatible with E", f4::compatibility_holds(rs)));

    let (gt, gt_type) = m.g_tilde();
    out.push(Check::eq("dim.gtilde", "the subalgebra generated by X(+-e2), X(+-a1), X(+-(e3+e4)) has dim 21", gt.len(), 21));
    out.push(Check::eq("type.gtilde", "its root subsystem has type C3", gt_type.as_str(), "C3"));
    let th_stable = gt.iter().all(|v| contains(&gt, &m.theta.apply(v)));
    out.push(Check::new("gtilde.theta", "the subalgebra is theta-stable", th_stable));
    let chi_stable = {
        let mut ech = Echelon::new();
        for v in &gt {
            ech.insert(to_sparse(&to_s(v)));
        }
        gt.iter().all(|v| ech.contains(&to_sparse(&m.cayley.apply(&to_s(v)))))
    };
    out.push(Check::new("gtilde.chi", "the subalgebra is stable under the Cayley transform", chi_stable));

    // theta
    let id = crate::exactnum::Matrix::<Q>::identity(dim);
    out.push(Check::new("theta.involution", "theta^2 = 1", &m.theta * &m.theta == id));
    let fixed = dim - (&m.theta - &id).rank();
    out.push(Check::eq("theta.fixed", "the +1 eigenspace of theta has dim 36", fixed, 36));
    let mut auto_ok = true;
    'outer: for i in 0..dim {
        for j in i + 1..dim {
            let lhs = m.theta.apply(&m.ch.alg.bracket(&unit(dim, i), &unit(dim, j)));
            if lhs != m.ch.alg.bracket(&m.theta.col(i), &m.theta.col(j)) {
                auto_ok = false;
                break 'outer;
            }
        }
    }
    out.push(Check::new("theta.automorphism", "theta[x,y] = [theta x, theta y] on all basis pairs", auto_ok));
    let roots_ok = f4::all_roots(rs).iter().all(|r| {
        let e = unit(dim, m.ch.e(&rs.coeffs_of(r).unwrap()));
        let t = unit(dim, m.ch.e(&rs.coeffs_of(&f4::theta(r)).unwrap()));
        ratio(&m.theta.apply(&e), &t).is_some()
    });
    out.push(Check::new("theta.roots", "theta acts on roots by e1 -> -e1", roots_ok));

    // X_mu
    let alg = &m.ch.alg;
    let a1 = f4::simple_roots()[0].clone();
    let e = |r: &Weight| unit(dim, m.ch.e(&rs.coeffs_of(r).unwrap()));
    let neg = |r: &Weight| -> Weight { r.iter().map(|x| -x.clone()).collect() };
    let x_a1 = e(&a1);
    let x_ma1 = e(&neg(&a1));
    let th = |v: &Vq| m.theta.apply(v);
    out.push(Check::new(
        "xmu.1",
        "[X_mu, theta X_a1] = -X_a1",
        alg.bracket(&m.x_mu, &th(&x_a1)) == scale_vec(&x_a1, &-Q::ONE),
    ));
    out.push(Check::new("xmu.2", "[X_mu, X_-a1] = theta X_-a1", alg.bracket(&m.x_mu, &x_ma1) == th(&x_ma1)));
    let h_mu = alg.bracket(&m.x_mu, &th(&m.x_mu));
    let kappa_mu = form(&m.killing_g, &m.x_mu, &th(&m.x_mu));
    out.push(Check::eq(
        "xmu.triple",
        "{H_mu, X_mu, theta X_mu} is an s-triple",
        (alg.bracket(&h_mu, &m.x_mu), alg.bracket(&h_mu, &th(&m.x_mu))),
        (scale_vec(&m.x_mu, &Q::from_int(2)), scale_vec(&th(&m.x_mu), &Q::from_int(-2))),
    ));
    out.push(Check::new("xmu.kappa", "<X_mu, theta X_mu> > 0", kappa_mu > Q::ZERO));

    // Cayley transform
    let chi = |v: &Vq| m.cayley.apply(&to_s(v));
    out.push(Check::eq("chi.hmu", "chi(H_mu) = X_mu + theta X_mu", chi(&h_mu), to_s(&super::add_vec(&m.x_mu, &th(&m.x_mu)))));
    let t_fixed = (2..=4).all(|i| {
        let h = m.k_to_g(&m.el(&format!("t{i}")));
        chi(&h) == to_s(&h)
    });
    out.push(Check::new("chi.t", "chi fixes t pointwise", t_fixed));
    let half_sqrt2 = QSqrt2::new(Q::ZERO, q(1, 2));
    let big_e = to_s(&m.k_to_g(&m.el("E")));
    out.push(Check::eq(
        "chi.e",
        "chi(theta X_-a1) = (sqrt2/2) E",
        chi(&th(&x_ma1)),
        big_e.iter().map(|x| x.clone() * half_sqrt2.clone()).collect(),
    ));
    let alg_s = alg.map_field(|x| QSqrt2::from(x.clone()));
    let cols: Vec<Vec<QSqrt2>> = (0..dim).map(|j| m.cayley.col(j)).collect();
    let mut chi_auto = true;
    'chi: for i in 0..dim {
        for j in i + 1..dim {
            let lhs = m.cayley.apply(&to_s(&alg.bracket(&unit(dim, i), &unit(dim, j))));
            if lhs != alg_s.bracket(&cols[i], &cols[j]) {
                chi_auto = false;
                break 'chi;
            }
        }
    }
    out.push(Check::new("chi.automorphism", "chi[x,y] = [chi x, chi y] on all basis pairs", chi_auto));

    // compact and noncompact roots
    let p = m.p_basis();
    let p_ok = p.iter().all(|v| m.theta.apply(v) == scale_vec(v, &-Q::ONE));
    out.push(Check::new("roots.noncompact", "chi(g_a) lies in p exactly for the predicted noncompact roots", p_ok));
    let k_ok = m.k_vectors.iter().all(|v| m.theta.apply(v) == *v);
    out.push(Check::new("roots.compact", "chi(g_a) lies in k exactly for the predicted compact roots", k_ok));
    out.push(Check::eq("roots.counts", "32 compact and 16 noncompact roots", (m.compact_roots().len(), p.len()), (32, 16)));
    out
}

/// The normalization identities of the distinguished elements.
pub fn normalizations(m: &F4Model) -> Vec<Check> {
    let mut out = Vec::new();
    let br = |a: &str, b: &str| m.bracket_k(&m.el(a), &m.el(b));
    let sc = |a: &str, c: Q| scale_vec(&m.el(a), &c);
    out.push(Check::eq("norm.x1x2", "[X1,X2] = E", br("X1", "X2"), m.el("E")));
    out.push(Check::eq("norm.x1e", "[X1,E] = X4", br("X1", "E"), m.el("X4")));
    out.push(Check::eq("norm.xm1e", "[X-1,E] = 2 X2", br("X-1", "E"), sc("X2", Q::from_int(2))));
    out.push(Check::eq("norm.xm1x4", "[X-1,X4] = 2 E", br("X-1", "X4"), sc("E", Q::from_int(2))));
    out.push(Check::eq("norm.he", "[H,E] = E/2", br("H", "E"), sc("E", q(1, 2))));
    out.push(Check::eq("norm.xdh", "[X_delta,H] = 0", br("Xdelta", "H"), vec![Q::ZERO; m.dim_k()]));
    out.push(Check::eq("norm.eyt", "E'(Y~) = [E,Y~] = E", br("E", "Ytilde"), m.el("E")));
    out.push(Check::eq("norm.xdyt", "X_delta'(Y~) = [X_delta,Y~] = X_delta", br("Xdelta", "Ytilde"), m.el("Xdelta")));
    let c = {
        let dim = m.ch.dim();
        let a1 = m.ch.rs.coeffs_of(&f4::simple_roots()[0]).unwrap();
        let x = unit(dim, m.ch.e(&a1));
        ratio(&m.ch.alg.bracket(&m.k_to_g(&m.el("Y")), &x), &x)
    };
    out.push(Check::eq("norm.c", "c = a1(Y) = 3/2", c, Some(q(3, 2))));
    out.push(Check::eq("norm.ye", "[Y,E] = -(3/2) E", br("Y", "E"), sc("E", q(-3, 2))));
    out.push(Check::eq("norm.yxd", "(e1+e2)(Y) = -1, i.e. [Y,X_delta] = -X_delta", br("Y", "Xdelta"), sc("Xdelta", -Q::ONE)));
    out.push(Check::eq("norm.e.gamma3", "E is a root vector of weight gamma3", m.root_vector(&weights::gamma3()), m.el("E")));
    for (name, h, e, f) in [("1", "H1", "X1", "X-1"), ("2", "H2", "X2", "X-2")] {
        let ok = br(e, f) == m.el(h)
            && br(h, e) == sc(e, Q::from_int(2))
            && br(h, f) == sc(f, Q::from_int(-2));
        out.push(Check::new(format!("triple.{name}"), format!("{{{h},{e},{f}}} is an s-triple"), ok));
    }
    out.push(Check::eq("norm.g2h1", "gamma2(H1) = -2", m.eval_weight(&weights::gamma2(), &m.el("H1")), Q::from_int(-2)));
    out.push(Check::eq("norm.g1h2", "gamma1(H2) = -1", m.eval_weight(&weights::gamma1(), &m.el("H2")), -Q::ONE));
    out.push(Check::eq("norm.dh2", "delta(H2) = 0", m.eval_weight(&weights::delta(), &m.el("H2")), Q::ZERO));

    // m+ and its distinguished differences
    let mplus = m.mplus();
    let dim = m.ch.dim();
    let paper_mplus: Vec<Vq> = f4::p_minus(&m.ch.rs)
        .iter()
        .map(|r| m.g_to_k(&unit(dim, m.ch.e(&m.ch.rs.coeffs_of(r).unwrap()))).unwrap())
        .collect();
    out.push(Check::new("mplus.span", "m+ is spanned by the root vectors of the positive roots of m", same_span(&mplus, &paper_mplus)));
    for (a, b) in [("Xgamma4", "Xdelta"), ("Xphi1", "Xdelta1"), ("Xphi2", "Xdelta2")] {
        let d = sub_vec(&m.el(a), &m.el(b));
        out.push(Check::new(format!("mplus.{a}"), format!("{a} - {b} lies in m+"), contains(&mplus, &d)));
    }
    let kap = |a: &Vq, b: &Vq| m.kappa_k(a, b);
    for (a, b) in [("gamma4", "delta"), ("phi1", "delta1"), ("phi2", "delta2")] {
        let pa = format!("X{a}");
        let pb = format!("X{b}");
        let na = format!("X-{a}");
        let nb = format!("X-{b}");
        out.push(Check::eq(format!("pair.{a}"), format!("<{pa},{na}> = 1"), kap(&m.el(&pa), &m.el(&na)), Q::ONE));
        out.push(Check::eq(format!("pair.{b}"), format!("<{pb},{nb}> = 1"), kap(&m.el(&pb), &m.el(&nb)), Q::ONE));
        let lhs = kap(&sub_vec(&m.el(&pa), &m.el(&pb)), &m.sum_of(&[na.as_str(), nb.as_str()]));
        out.push(Check::eq(format!("ortog.{a}"), format!("<{pa}-{pb}, {na}+{nb}> = 0"), lhs, Q::ZERO));
        let perp = m.subspace("m+perp").unwrap();
        out.push(Check::new(
            format!("perp.{a}"),
            format!("{na}+{nb} lies in (m+)^perp"),
            contains(&perp, &m.sum_of(&[na.as_str(), nb.as_str()])),
        ));
    }
    out.push(Check::eq("pair.gamma3", "<E, X-gamma3> = 1", kap(&m.el("E"), &m.el("X-gamma3")), Q::ONE));
    out
}

/// Subspace facts: dimensions, closure, orthocomplement decompositions.
pub fn subspaces(m: &F4Model) -> Vec<Check> {
    let mut out = Vec::new();
    let s = |n: &str| m.subspace(n).unwrap();
    for (name, d) in [
        ("y", 3),
        ("m+", 9),
        ("m+perp", 27),
        ("y_perp", 33),
        ("q+", 15),
        ("h_r", 2),
        ("q", 18),
        ("q~", 21),
        ("s", 24),
        ("k+", 16),
        ("h_k", 4),
    ] {
        out.push(Check::eq(format!("dim.{name}"), format!("dim {name} = {d}"), rank(&s(name)), d));
    }
    let hk = m.h_k();
    let hr_expected: Vec<Vq> = {
        let rows: Vec<Vq> = [f4::add(&weights::gamma4(), &weights::delta()), weights::gamma3()]
            .iter()
            .map(|w| hk.iter().map(|h| m.eval_weight(w, h)).collect())
            .collect();
        crate::exactnum::Matrix::from_rows(rows)
            .kernel()
            .iter()
            .map(|c| c.iter().zip(&hk).fold(vec![Q::ZERO; m.dim_k()], |acc, (x, h)| super::add_vec(&acc, &scale_vec(h, x))))
            .collect()
    };
    out.push(Check::new("hr.kernel", "h_r = ker(gamma4+delta) and ker(gamma3) in h_k", same_span(&s("h_r"), &hr_expected)));
    for name in ["q", "q~", "s", "m+", "y", "q+"] {
        out.push(Check::new(format!("subalg.{name}"), format!("{name} is a subalgebra"), m.is_subalgebra(&s(name))));
    }
    out.push(Check::new("qy", "[q, y] lies in y", m.normalizes(&s("q"), &s("y"))));
    let y = s("y");
    let abelian = y.iter().all(|a| y.iter().all(|b| m.bracket_k(a, b).iter().all(Zero::is_zero)));
    out.push(Check::new("y.abelian", "y is abelian", abelian));
    out.push(Check::new("y.ideal", "y is an ideal of m+", m.normalizes(&s("m+"), &y)));
    out.push(Check::new("x1.s", "[X1, s] lies in s", m.normalizes(&[m.el("X1")], &s("s"))));
    out.push(Check::new("perp.inclusion", "(m+)^perp lies in y^perp", is_subspace(&s("m+perp"), &s("y_perp"))));
    let six = ["X-delta", "X-delta1", "X-delta2", "T32", "T42", "T43"].map(|n| m.el(n));
    let dec = [s("m+perp"), six.to_vec()].concat();
    out.push(Check::new(
        "perp.decomposition",
        "y^perp = (m+)^perp + <X-delta, X-delta1, X-delta2, T32, T42, T43>, direct",
        rank(&dec) == 33 && same_span(&dec, &s("y_perp")),
    ));
    let three = vec![m.rv([0, -1, -1, 0], 1), m.rv([0, -1, 0, -1], 1), m.rv([0, 0, -1, -1], 1)];
    let dec_k = [s("y_perp"), three].concat();
    out.push(Check::eq("k.decomposition", "k = y^perp + <X-(e~2+e~3), X-(e~2+e~4), X-(e~3+e~4)>", rank(&dec_k), 36));
    let kperp = m.orthocomplement(&s("k"));
    out.push(Check::eq("kperp", "the orthocomplement of k in k is zero", kperp.len(), 0));
    out.push(Check::new("zo.perp", "Z_o lies in (m+)^perp", contains(&s("m+perp"), &m.z_o())));

    // invariance of the Killing form on every basis triple of k
    let n = m.dim_k();
    let kk = &m.killing_k;
    let mut inv_ok = true;
    'inv: for i in 0..n {
        for j in 0..n {
            let bij = m.k.bracket_basis(i, j);
            for l in 0..n {
                let mut acc = Q::ZERO;
                for (t, c) in bij {
                    acc += c.clone() * kk[(*t, l)].clone();
                }
                for (t, c) in m.k.bracket_basis(i, l) {
                    acc += c.clone() * kk[(j, *t)].clone();
                }
                if !acc.is_zero() {
                    inv_ok = false;
                    break 'inv;
                }
            }
        }
    }
    out.push(Check::new("kappa.invariant", "<[x,y],z> + <y,[x,z]> = 0 on all basis triples of k", inv_ok));
    out.push(Check::new("k.jacobi", "Jacobi identity on k", m.k.check_jacobi().is_ok()));
    out.push(Check::new("g.jacobi", "Jacobi identity on g in the Iwasawa basis", m.g.check_jacobi().is_ok()));
    out.push(Check::new("kappa.nondegenerate", "Killing form of g is nondegenerate", m.killing_g.det() != Q::ZERO));
    out
}

/// Ranks of the transversality maps and the congruences behind them.
pub fn transversality(m: &F4Model) -> Vec<Check> {
    let mut out = Vec::new();
    let zo = m.z_o();
    let yperp = m.subspace("y_perp").unwrap();
    let mperp = m.subspace("m+perp").unwrap();
    out.push(Check::eq("t.rank", "rank T_Zo = dim y^perp = 33", m.transversality_rank(false, &zo), 33));
    out.push(Check::new(
        "t.image",
        "the image of T_Zo lies in y^perp",
        is_subspace(&m.transversality_image(false, &zo), &yperp),
    ));
    out.push(Check::eq("tt.rank", "rank T~_Zo = dim k = 36", m.transversality_rank(true, &zo), 36));
    let zero = vec![Q::ZERO; m.dim_k()];
    out.push(Check::eq("t.zero", "with Z = 0 the rank is dim (m+)^perp", m.transversality_rank(false, &zero), mperp.len()));
    let tz = |x: &Vq| m.bracket_k(x, &zo);
    let nonzero = |c: Option<Q>| c.is_some_and(|c| !c.is_zero());
    // each congruence holds modulo (m+)^perp and the targets reached before it
    let mut modulo = mperp.clone();
    for (src, src_v, tgt) in [
        ("X_phi2", m.el("Xphi2"), "T42"),
        ("X_phi1", m.el("Xphi1"), "T32"),
        ("X_psi2", m.rv([-1, 1, 1, -1], 2), "X-delta2"),
        ("X_psi1", m.rv([-1, 1, -1, 1], 2), "X-delta1"),
        ("H(e~4-e~1)", m.coroot_w([-1, 0, 0, 1], 1), "X-delta"),
        ("T43", m.el("T43"), "T43"),
    ] {
        let c = coefficient_mod(&tz(&src_v), &m.el(tgt), &modulo);
        out.push(Check::with(
            format!("t.{src}"),
            format!("T_Zo({src}, 0) = c {tgt} with c != 0, modulo (m+)^perp and the earlier targets"),
            nonzero(c.clone()),
            || format!("{c:?}"),
        ));
        modulo.push(m.el(tgt));
    }
    let a = [m.rv([0, -1, -1, 0], 1), m.rv([0, -1, 0, -1], 1), m.rv([0, 0, -1, -1], 1)];
    for (src, src_v, tgt) in [
        ("X(-e~4+e~1)", m.rv([1, 0, 0, -1], 1), 1usize),
        ("X_gamma1", m.el("X1"), 2usize),
    ] {
        let c = coefficient_mod(&tz(&src_v), &a[tgt], &yperp);
        out.push(Check::with(
            format!("tt.{src}"),
            format!("T~_Zo({src}, 0) is a nonzero multiple of a y-dual root vector mod y^perp"),
            nonzero(c.clone()),
            || format!("{c:?}"),
        ));
    }
    let v = tz(&m.rv([1, 0, -1, 0], 1));
    let mut basis = yperp.clone();
    basis.push(a[0].clone());
    basis.push(a[2].clone());
    let coords = super::LieAlgebra::<Q>::coordinates(&basis, &v);
    let ok = coords.as_ref().is_some_and(|c| !c[c.len() - 2].is_zero() && !c[c.len() - 1].is_zero());
    out.push(Check::new(
        "tt.X(-e~3+e~1)",
        "T~_Zo(X(-e~3+e~1), 0) = a3 X-(e~2+e~3) + a4 X-(e~3+e~4) mod y^perp with a3, a4 != 0",
        ok,
    ));
    out
}

/// All model checks in order.
pub fn all(m: &F4Model) -> Vec<Check> {
    [structure(m), normalizations(m), subspaces(m), transversality(m)].concat()
}
