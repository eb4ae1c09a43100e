//! Checks on irreducible `k`-modules and on Kostant degrees in `U(k)^m`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_irrep, KTypeLabel, Repth, RepthError, ScanOrder};
use crate::check::Check;
use crate::exactnum::{binomial, Rational};
use crate::rootdata::dot;
use crate::uea::{invariants_up_to_degree, joint_kernel, monomials_up_to, Uea};

type Q = Rational;

/// Labels whose modules fit the default dimension cap.
pub const SMALL_LABELS: [(u32, u32); 5] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)];

fn measured(id: impl Into<String>, anchor: impl Into<String>, value: String) -> Check {
    let mut c = Check::new(id, anchor, true);
    c.witness = Some(value);
    c
}

/// Construction checks, `m`-invariants and the highest weight identities.
pub fn irreps(r: &Repth, labels: &[(u32, u32)]) -> Vec<Check> {
    let mut out = Vec::new();
    let alg = &r.wb.model.k;
    for &(k, l) in labels {
        let lab = KTypeLabel::new(k, l);
        let tag = format!("irrep{lab}");
        let v = match r.irrep_label(lab) {
            Ok(v) => v,
            Err(e) => {
                out.push(Check::with(format!("{tag}.build"), "module construction", false, || e.to_string()));
                continue;
            }
        };
        let weyl = r.weyl_dimension(&lab.xi());
        out.push(Check::eq(format!("{tag}.dim"), "dimension equals the Weyl formula", Q::from_int(v.dim() as i64), weyl));
        let defect = v.bracket_defect(alg);
        out.push(Check::with(format!("{tag}.brackets"), "[rho X, rho Y] = rho [X, Y] for all basis pairs", defect.is_none(), || format!("{defect:?}")));
        out.push(Check::new(format!("{tag}.cartan"), "Cartan elements act by the recorded weights", v.cartan_diagonal(&r.backend)));
        let mults = v.multiplicities();
        let rev = build_irrep(&r.backend, &lab.xi(), r.cap, ScanOrder::Reverse).map(|w| w.multiplicities());
        out.push(Check::new(format!("{tag}.order"), "radical quotient is independent of the scan order", rev.as_ref() == Ok(&mults)));
        let sym = mults.iter().all(|(mu, m)| (0..r.backend.rank()).all(|i| mults.get(&r.backend.reflect(mu, i)) == Some(m)));
        out.push(Check::new(format!("{tag}.weyl_symmetry"), "weight multiplicities are invariant under simple reflections", sym));
        let inv = r.m_invariants(&v);
        out.push(measured(format!("{tag}.dim_vm"), "dim V^m (measured, m-annihilation only)", format!("{}", inv.len())));
        out.push(Check::new(format!("{tag}.vm_nonzero"), "V^m != 0 for a label xi_{k,l}", !inv.is_empty()));
        for x in &inv {
            out.extend(r.verify_hw(&v, lab, x));
            out.extend(r.verify_ladder(&v, lab, x));
        }
    }
    out
}

/// `V^m != 0` exactly for highest weights of the form `xi_{k,l}`, over all
/// dominant weights `sum n_i w_i` with `sum n_i <= 2` within the cap.
pub fn invariants_classify(r: &Repth) -> Vec<Check> {
    let fund = r.fundamental_weights();
    let n = fund.len();
    let mut out = Vec::new();
    let mut outside = Vec::new();
    for (i, w) in fund.iter().enumerate() {
        if r.xi_label(w).is_none() {
            outside.push(format!("w{} = {}", i + 1, super::fmt_weight(w)));
        }
    }
    out.push(measured("fundamentals.outside", "fundamental weights outside the xi_{k,l} set (computed)", outside.join("; ")));
    let mut weights = Vec::new();
    for a in 0..n {
        weights.push(fund[a].clone());
        for b in a..n {
            weights.push(fund[a].iter().zip(&fund[b]).map(|(x, y)| x + y).collect::<Vec<Q>>());
        }
    }
    weights.push(vec![Q::zero(); 4]);
    for w in weights {
        if r.weyl_dimension(&w) > Q::from_int(r.cap as i64) {
            continue;
        }
        let id = format!("classify{}", super::fmt_weight(&w));
        match r.irrep(&w) {
            Ok(v) => {
                let nonzero = !r.m_invariants(&v).is_empty();
                let label = r.xi_label(&w);
                out.push(Check::with(id, "V^m != 0 iff xi = xi_{k,l}", nonzero == label.is_some(), || format!("V^m nonzero: {nonzero}, label {label:?}")));
            }
            Err(e) => out.push(Check::with(id, "module construction", false, || e.to_string())),
        }
    }
    out
}

fn dim_of(r: &Repth, w: &[Q]) -> Q {
    r.weyl_dimension(w)
}

/// The dimension formula on standard examples.
pub fn weyl_examples(r: &Repth) -> Vec<Check> {
    let zero = vec![Q::zero(); 4];
    let rho = r.backend.rho();
    let theta = r.backend.positive.iter().max_by(|a, b| dot(a, &rho).cmp(&dot(b, &rho))).cloned().unwrap_or_default();
    let vector = KTypeLabel::new(0, 1).xi();
    vec![
        Check::eq("weyl.trivial", "dim V_0 = 1", dim_of(r, &zero), Q::one()),
        Check::eq("weyl.vector", "dim of the vector module = 9", dim_of(r, &vector), Q::from_int(9)),
        Check::eq("weyl.adjoint", "dim of the adjoint module = 36", dim_of(r, &theta), Q::from_int(36)),
        Check::eq("weyl.spin", "dim V_{1,0} = 16", dim_of(r, &KTypeLabel::new(1, 0).xi()), Q::from_int(16)),
        Check::eq("weyl.positive_roots", "k has 16 positive roots", r.backend.positive.len(), 16),
    ]
}

/// Errors of the module builder.
pub fn builder_errors(r: &Repth) -> Vec<Check> {
    let big = KTypeLabel::new(4, 0).xi();
    let too_large = matches!(r.irrep(&big), Err(RepthError::TooLarge { .. }));
    let not_dom = matches!(r.irrep(&[Q::new(-1, 1), Q::zero(), Q::zero(), Q::zero()]), Err(RepthError::NotDominant(_)));
    vec![
        Check::new("irrep.cap", "dimension bound exceeded is reported with the Weyl prediction", too_large),
        Check::new("irrep.dominance", "non-dominant weights are rejected", not_dom),
    ]
}

/// Basis of `U_d(k)^m`.
pub fn m_invariants_up_to(r: &Repth, d: u32) -> Vec<Uea> {
    invariants_up_to_degree(r.wb.uk(), &r.wb.model.m_basis(), d)
}

/// Kostant degrees of distinguished and sampled invariants.
pub fn kostant(r: &Repth) -> Vec<Check> {
    let wb = r.wb;
    let uk = wb.uk();
    let mut out = Vec::new();
    let rho = r.backend.rho();
    let theta = r.backend.positive.iter().max_by(|a, b| dot(a, &rho).cmp(&dot(b, &rho))).cloned().unwrap_or_default();
    let xt = Uea::from_lie(&wb.model.root_vector(&theta));
    out.push(Check::eq("casimir.scale", "Casimir of k acts on the adjoint by (theta, theta + 2 rho)", r.casimir_ad(&xt), xt.scale(&r.casimir_value(&theta))));
    out.push(Check::eq("kostant.one", "d(1) = 0", r.kostant_degree(&Uea::one()), Ok(Some(0))));
    out.push(Check::eq("kostant.cas_k", "d(Casimir(k)) = 0", r.kostant_degree(&wb.casimir_k()), Ok(Some(0))));
    let dm = r.kostant_degree(&wb.casimir_m());
    out.push(Check::with("kostant.cas_m", "d(Casimir(m)) lies in {0, 2, 4}", matches!(dm, Ok(Some(0 | 2 | 4))), || format!("{dm:?}")));
    out.push(measured("kostant.cas_m.value", "d(Casimir(m)) (measured)", format!("{dm:?}")));
    match wb.omega() {
        Ok(om) => {
            let d0 = r.kostant_degree(&om.omega.coeffs[0]);
            out.push(Check::with("kostant.omega0", "d(omega_0) <= 4", matches!(d0, Ok(Some(d)) if d <= 4), || format!("{d0:?}")));
        }
        Err(e) => out.push(Check::with("kostant.omega0", "omega is available", false, || e)),
    }
    let e = wb.el("E");
    out.push(Check::eq("kostant.rejects", "non-invariant input is an error", r.kostant_degree(&e).err(), Some(RepthError::NotMInvariant)));

    let samples = m_invariants_up_to(r, 2);
    let mut gamma_odd = BTreeSet::new();
    for (i, u) in samples.iter().enumerate() {
        let dec = match r.kostant(u) {
            Ok(d) => d,
            Err(err) => {
                out.push(Check::with(format!("kostant.sample{i}"), "decomposition succeeds", false, || err.to_string()));
                continue;
            }
        };
        let deg = dec.degree.unwrap_or(0);
        out.push(Check::with(format!("degree_bound.sample{i}"), "d(u) <= 2m on U_m(k)^m, m = 2", deg <= 4, || format!("d = {deg}")));
        gamma_odd.extend(dec.labels.iter().filter(|l| !l.in_gamma1()).copied());
        let invariant = wb.model.k.names().iter().enumerate().all(|(a, _)| uk.ad_gen(a, u).is_zero());
        out.push(Check::eq(format!("degree_zero.sample{i}"), "d(u) = 0 iff u is k-invariant", deg == 0, invariant));
        let sum: Uea = dec.components.iter().fold(Uea::zero(), |acc, c| acc.add(&c.part));
        out.push(Check::eq(format!("kostant.sample{i}.sum"), "isotypic parts add up to u", sum, u.clone()));
    }
    out.push(Check::with("even_k_only", "only even k occurs inside U(k)", gamma_odd.is_empty(), || format!("{gamma_odd:?}")));
    out
}

fn random_combination(basis: &[Uea], rng: &mut ChaCha8Rng) -> Uea {
    loop {
        let u = basis.iter().fold(Uea::zero(), |acc, b| acc.add(&b.scale(&Q::from_int(rng.gen_range(-3..=3)))));
        if !u.is_zero() {
            return u;
        }
    }
}

/// Seeded combinations of the basis of `U_2(k)^m`: `d(u) <= 4` on `samples`
/// elements and `d(uv) = d(u) + d(v)` on `pairs` pairs.
pub fn sampled_degrees(r: &Repth, seed: u64, samples: usize, pairs: usize) -> Vec<Check> {
    let basis = m_invariants_up_to(r, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound_bad = Vec::new();
    for i in 0..samples {
        let u = random_combination(&basis, &mut rng);
        match r.kostant_degree(&u) {
            Ok(Some(d)) if d <= 4 => {}
            other => bound_bad.push(format!("sample {i}: {other:?}")),
        }
    }
    let mut add_bad = Vec::new();
    for i in 0..pairs {
        let (u, v) = (random_combination(&basis, &mut rng), random_combination(&basis, &mut rng));
        let d = |x: &Uea| r.kostant_degree(x);
        let (du, dv, duv) = (d(&u), d(&v), d(&r.wb.uk().mul(&u, &v)));
        match (&du, &dv, &duv) {
            (Ok(Some(a)), Ok(Some(b)), Ok(Some(c))) if a + b == *c => {}
            _ => add_bad.push(format!("pair {i}: {du:?} + {dv:?} vs {duv:?}")),
        }
    }
    vec![
        Check::with(format!("degree_bound.seeded.{samples}"), "d(u) <= 2m on seeded u in U_m(k)^m, m = 2", bound_bad.is_empty(), || bound_bad.join("; ")),
        Check::with(format!("additivity.seeded.{pairs}"), "d(uv) = d(u) + d(v) on seeded pairs in U_2(k)^m", add_bad.is_empty(), || add_bad.join("; ")),
        measured("sampled.seed", "seed of the sampled Kostant degree checks", seed.to_string()),
    ]
}

/// `d(uv) = d(u) + d(v)`, `d(u + v) <= max` and the Leibniz identities for
/// `Xdot_delta` on products of top-degree parts.
pub fn additivity(r: &Repth) -> Vec<Check> {
    let uk = r.wb.uk();
    let xd = r.wb.lie("Xdelta");
    let e = r.wb.lie("E");
    let samples = m_invariants_up_to(r, 2);
    let decs: Vec<_> = samples.iter().map(|u| r.kostant(u)).collect();
    let mut out = Vec::new();
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let (Ok(du), Ok(dv)) = (&decs[i], &decs[j]) else { continue };
            let (p, q) = (du.degree.unwrap_or(0), dv.degree.unwrap_or(0));
            let tag = format!("additivity.{i}.{j}");
            let prod = uk.mul(&samples[i], &samples[j]);
            let dp = r.kostant_degree(&prod);
            out.push(Check::with(tag.clone(), "d(uv) = d(u) + d(v)", dp == Ok(Some(p + q)), || format!("{dp:?} vs {p} + {q}")));
            let ds = r.kostant_degree(&samples[i].add(&samples[j]));
            out.push(Check::with(format!("{tag}.sum"), "d(u + v) <= max(d(u), d(v))", matches!(ds, Ok(Some(d)) if d <= p.max(q)), || format!("{ds:?}")));
            let (Some(ut), Some(vt)) = (du.top_part(), dv.top_part()) else { continue };
            let k = du.labels.iter().filter(|l| l.degree() == p).map(|l| l.k).max().unwrap_or(0);
            let l = dv.labels.iter().filter(|x| x.degree() == q).map(|x| x.k).max().unwrap_or(0);
            let uv = uk.mul(&ut, &vt);
            let xu = uk.ad_pow(&xd, k, &ut);
            let xv = uk.ad_pow(&xd, l, &vt);
            let top = uk.ad_pow(&xd, k + l, &uv);
            let c = binomial(i64::from(k + l), i64::from(l));
            let want = uk.mul(&xu, &xv).scale(&c);
            out.push(Check::new(format!("{tag}.x1"), "Xdot^{k+l}(uv) = C(k+l,l) Xdot^k(u) Xdot^l(v) != 0", top == want && !top.is_zero()));
            out.push(Check::new(format!("{tag}.x2"), "Xdot^{k+l+1}(uv) = 0", uk.ad(&xd, &top).is_zero()));
            let (a, b) = ((p - k) / 2, (q - l) / 2);
            let lhs = uk.ad_pow(&e, a + b, &top);
            let c2 = &c * &binomial(i64::from(a + b), i64::from(b));
            let rhs = uk.mul(&uk.ad_pow(&e, a, &xu), &uk.ad_pow(&e, b, &xv)).scale(&c2);
            out.push(Check::new(format!("{tag}.xe"), "Edot^{(p+q-k-l)/2} Xdot^{k+l}(uv) is the binomial multiple of the dominant product", lhs == rhs && !lhs.is_zero()));
        }
    }
    out
}

/// `k+`-dominant vectors of weight `lambda` in the span of `cands`.
fn dominant_in(r: &Repth, cands: &[Uea], lambda: &[Q]) -> Vec<Uea> {
    let uk = r.wb.uk();
    let t1 = r.wb.lie("t1");
    let l1 = lambda[0].clone();
    let es: Vec<Vec<Q>> = r.backend.simple.iter().map(|s| s.e.clone()).collect();
    let weight = move |u: &Uea| uk.ad(&t1, u).sub(&u.scale(&l1));
    let mut maps: Vec<Box<dyn Fn(&Uea) -> Uea + '_>> = vec![Box::new(weight)];
    for x in es {
        maps.push(Box::new(move |u: &Uea| uk.ad(&x, u)));
    }
    let refs: Vec<&dyn Fn(&Uea) -> Uea> = maps.iter().map(|b| b.as_ref()).collect();
    joint_kernel(cands, &refs).into_iter().filter(|u| !u.is_zero()).collect()
}

/// A `k+`-dominant vector of weight `a(gamma4 + delta) + b gamma3` in
/// `U_r(k) m+` is zero. A control run over all of `U_r(k)` finds the
/// nonzero dominant vectors that exist outside the ideal.
pub fn dominant_in_ideal(r: &Repth, max_degree: u32, weights: &[(u32, u32)]) -> Vec<Check> {
    let uk = r.wb.uk();
    let start = r.wb.model.mplus_start;
    let n = r.wb.model.dim_k();
    let mut out = Vec::new();
    for deg in 1..=max_degree {
        let monos = monomials_up_to(n, deg - 1);
        let all = monomials_up_to(n, deg);
        for &(a, b) in weights {
            let lab = KTypeLabel::new(2 * a, b);
            let lambda = lab.xi();
            let cands: Vec<Uea> = monos
                .iter()
                .flat_map(|m| (start..n).map(move |x| (m, x)))
                .filter(|(m, x)| {
                    let mut w = r.wb.m_weight(m);
                    for (y, t) in w.iter_mut().zip(&r.wb.model.k_labels[*x].t_weight) {
                        *y += t;
                    }
                    w.as_slice() == &lambda[1..]
                })
                .map(|(m, x)| uk.mul(&Uea::term(m.clone(), Q::one()), &Uea::gen(x)))
                .collect();
            let found = dominant_in(r, &cands, &lambda);
            out.push(Check::with(
                format!("dominant_in_ideal.deg{deg}.{a}.{b}"),
                "k+-dominant vectors of weight a(gamma4+delta)+b gamma3 in U(k)m+ vanish",
                found.is_empty(),
                || format!("{} nonzero, first {}", found.len(), r.wb.fmt(&found[0])),
            ));
            let free: Vec<Uea> = all.iter().filter(|m| r.wb.m_weight(m).as_slice() == &lambda[1..]).map(|m| Uea::term(m.clone(), Q::one())).collect();
            let control = dominant_in(r, &free, &lambda);
            // the constant 1 is dominant of weight 0 in every degree
            if lab.k == 0 && lab.l == 0 {
                out.push(Check::new(format!("dominant_in_ideal.deg{deg}.{a}.{b}.control"), "the same weight has dominant vectors in U_r(k)", !control.is_empty()));
            } else {
                out.push(measured(format!("dominant_in_ideal.deg{deg}.{a}.{b}.control"), "dominant vectors of this weight in U_r(k) (measured)", control.len().to_string()));
            }
        }
    }
    out
}

pub fn all(r: &Repth) -> Vec<Check> {
    let mut out = weyl_examples(r);
    out.extend(builder_errors(r));
    out.extend(irreps(r, &SMALL_LABELS));
    out.extend(invariants_classify(r));
    out.extend(kostant(r));
    out.extend(additivity(r));
    out.extend(dominant_in_ideal(r, 3, &[(0, 0), (1, 0), (0, 1), (0, 2), (1, 1)]));
    out
}
