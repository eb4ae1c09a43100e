//! Checks on the index bookkeeping, the coefficient matrices and the
//! enveloping-algebra assemblies, for `omega` and seeded invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use super::*;
use crate::check::Check;
use crate::repth::Repth;
use crate::uea::{invariants_up_to_degree, IwasawaElement, Uea, Workbench};

fn measured(id: impl Into<String>, anchor: impl Into<String>, value: String) -> Check {
    let mut c = Check::new(id, anchor, true);
    c.witness = Some(value);
    c
}

pub fn bookkeeping() -> Vec<Check> {
    let mut out = vec![
        Check::eq("profile.m2", "d_r for m = 2", DegreeProfile::new(2).dr, vec![4, 3, 2]),
        Check::eq("profile.m1", "d_r for m = 1", DegreeProfile::new(1).dr, vec![2, 1]),
        Check::eq("profile.m0", "2 d_0 = 2 for m = 0", 2 * DegreeProfile::new(0).d0(), 2),
    ];
    let s = index_sets(2, 2, 0).expect("valid");
    out.push(Check::eq("sets.m2t2n0", "L, R, R~ at m = 2, T = 2, n = 0", (s.l, s.r, s.r_tilde), (vec![1], vec![0, 2], vec![0])));
    out.push(Check::new("sets.range", "out-of-range (T, n) is rejected", index_sets(2, 1, 0).is_err() && index_sets(2, 4, 5).is_err()));
    let reduced = system_matrix::<Rational>(2, 0, 2, true).expect("valid");
    out.push(Check::eq("matrix.m2t2n0", "reduced system matrix at m = 2, T = 2, n = 0", reduced.entries.to_rows(), vec![vec![Rational::ONE]]));
    out.push(Check::eq("coeff.a_nn", "A_{n,n}(T,n,0) = n!", coefficient_a(3, 3, 5, 3, 0).value, factorial(3)));
    out.push(Check::new("coeff.a_low", "A_{i,r} vanishes for r < i", coefficient_a(2, 1, 4, 0, 1).value.is_zero()));
    out.push(Check::new("coeff.b_low", "B_{r,k} vanishes when T-r-2k exceeds L", coefficient_b(0, 0, 4, 0, 3).value.is_zero()));
    out
}

/// System matrices against `A(s)` evaluated at `s = T - n`.
pub fn matrices_vs_generalized(m_max: u32) -> Vec<Check> {
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 0..=m_max {
        for (t, n) in valid_pairs(m) {
            for reduced in [false, true] {
                let sm = system_matrix::<Rational>(t, n, m, reduced).expect("valid");
                let delta = (t - n) % 2;
                let s = Rational::from_int((t - n).into());
                for (i, &l) in sm.rows.iter().enumerate() {
                    for (j, &r) in sm.cols.iter().enumerate() {
                        count += 1;
                        let g = generalized_entry::<Rational>(l, (r - delta) / 2, delta).eval(&s);
                        if sm.entries.row(i)[j] != g {
                            bad.push((m, t, n, l, r));
                        }
                    }
                }
            }
        }
    }
    vec![Check::with(
        format!("matrix.generalized.m{m_max}"),
        "system matrix entries equal A_ij(T - n) for every valid (T, n)",
        bad.is_empty() && count > 0,
        || format!("{count} entries, mismatches {bad:?}"),
    )]
}

pub fn determinants(k_max: usize, l_max: u32) -> Vec<Check> {
    let table = determinant_table(k_max, l_max);
    let not_split: Vec<_> = table.iter().filter(|r| !r.splits && !r.identically_zero).map(|r| (r.lseq.clone(), r.delta)).collect();
    let zero: Vec<_> = table.iter().filter(|r| r.identically_zero).map(|r| (r.lseq.clone(), r.delta)).collect();
    let mut out = vec![
        Check::with("det.split", "det A(s) is a product of rational linear factors", not_split.is_empty(), || format!("{not_split:?}")),
        measured("det.count", "determinants computed / identically zero (measured)", format!("{} / {}", table.len(), zero.len())),
    ];
    let cases = singular_cases(3);
    let inconsistent: Vec<_> = cases
        .iter()
        .filter(|c| {
            let s = Rational::from_int((c.t - c.n).into());
            let root = c.report.roots.iter().any(|(r, _)| *r == s);
            if c.report.identically_zero {
                !c.singular
            } else {
                c.report.splits && c.singular != root
            }
        })
        .map(|c| (c.m, c.t, c.n))
        .collect();
    out.push(Check::with("det.singular_consistent", "A(T - n) is singular exactly when T - n is a root of det A(s)", inconsistent.is_empty(), || {
        format!("{inconsistent:?}")
    }));
    let singular: Vec<String> = cases
        .iter()
        .filter(|c| c.singular)
        .map(|c| format!("m={} T={} n={} roots={:?}", c.m, c.t, c.n, c.report.roots.iter().map(|(r, k)| format!("{r}^{k}")).collect::<Vec<_>>()))
        .collect();
    out.push(measured("det.singular_cases", "singular A(T, n) for m <= 3 with the factors of det A(s) (measured)", singular.join("; ")));
    out
}

pub fn u_element(ctx: &SystemContext) -> Vec<Check> {
    let (a, b) = match ctx.u_coefficients() {
        Ok(ab) => ab,
        Err(e) => return vec![Check::with("u.unique", "a unique k+-dominant U exists in span{X_delta X_4, T_23 S_23, T_24 S_24}", false, || e.to_string())],
    };
    let u = ctx.u_element();
    let defect = ctx.u_defect();
    vec![
        Check::with("u.signs", "U = X_delta X_4 - c T_23 S_23 + c T_24 S_24 with c > 0", a == -b.clone() && !b.is_negative() && !b.is_zero(), || format!("a = {a}, b = {b}")),
        measured("u.scale", "c in the model's root-vector normalization (measured)", b.to_string()),
        Check::new("u.weight", "U has weight gamma_4 + delta", ctx.has_weight(&u, &SystemContext::u_weight())),
        Check::new("u.dominant", "U is k+-dominant", ctx.is_dominant(&u)),
        Check::new("u.mod_y", "U = X_delta X_4 mod U(k)y", ctx.wb.mod_y().reduce(&defect).is_zero()),
        Check::new("u.nontrivial", "U differs from X_delta X_4 in U(k)", !defect.is_zero()),
    ]
}

/// Seeded combinations of a basis of `U_2(k)^m`.
pub fn seeded_invariants(wb: &Workbench, seed: u64, count: usize) -> Vec<Uea> {
    let basis = invariants_up_to_degree(wb.uk(), &wb.model.m_basis(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut u = Uea::zero();
            for b in &basis {
                u.axpy(&Rational::from_int(rng.gen_range(-3..=3)), b);
            }
            u
        })
        .collect()
}

pub fn d_k_operators(ctx: &SystemContext, seed: u64, samples: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let (mut bad_w, mut bad_x1, mut bad_q, mut bad_dom, mut total) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), 0);
    for (s, u) in seeded_invariants(ctx.wb, seed, samples).iter().enumerate() {
        let typed = match ctx.typed(&IwasawaElement::new(vec![u.clone()])) {
            Ok(t) => t,
            Err(e) => {
                out.push(Check::with(format!("dk.sample{s}"), "seeded invariant splits into pure K-types", false, || e.to_string()));
                continue;
            }
        };
        for (label, part) in &typed.parts[0] {
            for k in 0..=label.k {
                let d = ctx.d_k(part, *label, k).expect("type and range are valid");
                total += 1;
                let tag = (s, label.to_string(), k);
                if !ctx.has_weight(&d, &SystemContext::d_k_weight(*label, k)) {
                    bad_w.push(tag.clone());
                }
                if !ctx.x1_null(&d) {
                    bad_x1.push(tag.clone());
                }
                if !ctx.q_plus_null_mod_y(&d) {
                    bad_q.push(tag.clone());
                }
                if k == 0 && !ctx.is_dominant(&d) {
                    bad_dom.push(tag);
                }
            }
        }
    }
    let fmt = |v: &Vec<(usize, String, u32)>| format!("{} of {total}: {v:?}", v.len());
    out.push(Check::with("dk.weight", "D_k(b_{2i,j}) has weight i(gamma_4 + delta) + (j + k) gamma_3", bad_w.is_empty() && total > 0, || fmt(&bad_w)));
    out.push(Check::with("dk.x1", "Xdot_1(D_k(b_{2i,j})) = 0", bad_x1.is_empty(), || fmt(&bad_x1)));
    out.push(Check::with("dk.qplus", "Xdot(D_k(b_{2i,j})) = 0 mod U(k)y for X in q+", bad_q.is_empty(), || fmt(&bad_q)));
    out.push(Check::with("dk.d0_dominant", "D_0(b_{2i,j}) is k+-dominant", bad_dom.is_empty(), || fmt(&bad_dom)));
    out.push(Check::with("dk.errors", "D_k rejects odd types and k > 2i", {
        let lab = crate::repth::KTypeLabel::new(1, 0);
        ctx.d_k(&Uea::one(), lab, 0).is_err() && ctx.d_k(&Uea::one(), crate::repth::KTypeLabel::new(2, 0), 3).is_err()
    }, String::new));
    out
}

/// The congruences for `b` at the listed `(T, l, n)`, in both forms.
pub fn assemblies(ctx: &SystemContext, name: &str, b: &TypedElement, cases: &[(u32, u32, u32)]) -> Vec<Check> {
    let mut out = Vec::new();
    for &(t, l, n) in cases {
        let id = format!("assemble.{name}.T{t}.l{l}.n{n}");
        match ctx.assemble(b, t, l, n) {
            Ok(a) => {
                out.push(Check::with(format!("{id}.direct"), "(-1)^n Sigma_1 E^n - (-1)^l Sigma_2 E^l = 0 mod U(k)m+", a.direct_zero, || a.direct.clone()));
                out.push(Check::with(format!("{id}.typed"), "the same congruence with K-type components and X_delta^T appended", a.typed_zero, || a.typed.clone()));
            }
            Err(e) => out.push(Check::with(id, "assembly hypotheses hold", false, || e.to_string())),
        }
    }
    out
}

/// `E_L(n)` vanishes modulo `U(k)m+` and equals its two-sum split exactly.
pub fn script_e(ctx: &SystemContext, name: &str, b: &TypedElement, t: u32) -> Vec<Check> {
    let m = b.degree().unwrap_or(0) as u32;
    let prof = DegreeProfile::new(m);
    let md = ctx.wb.mod_mplus();
    let (mut bad_split, mut bad_zero, mut alt_nonzero, mut count) = (Vec::new(), Vec::new(), Vec::new(), 0);
    for n in 0..=(2 * prof.dr[m as usize]).min(t) {
        for big_l in 0..=((2 * m).min(t)).saturating_sub(n) {
            if n + big_l > t {
                continue;
            }
            count += 1;
            let (total, split) = ctx.script_e(b, t, big_l, n, true);
            if total != split {
                bad_split.push((big_l, n));
            }
            if !md.reduce(&total).is_zero() {
                bad_zero.push((big_l, n));
            }
            let (alt, _) = ctx.script_e(b, t, big_l, n, false);
            if !md.reduce(&alt).is_zero() {
                alt_nonzero.push((big_l, n));
            }
        }
    }
    vec![
        Check::with(format!("script_e.{name}.T{t}.split"), "E_L(n) = (-1)^n E^1_L(n) E^n - E^2_L(n) E^L", bad_split.is_empty() && count > 0, || format!("{bad_split:?}")),
        Check::with(format!("script_e.{name}.T{t}.zero"), "E_L(n) = 0 mod U(k)m+", bad_zero.is_empty(), || format!("{bad_zero:?}")),
        measured(
            format!("script_e.{name}.T{t}.alternative"),
            "(L, n) where E_L(n) built from the unshifted sums is nonzero mod U(k)m+ (measured)",
            format!("{alt_nonzero:?}"),
        ),
    ]
}

/// The system in the dominant unknowns, exactly, at every `(T, n)` where its
/// hypotheses hold.
pub fn dominant_systems(ctx: &SystemContext, name: &str, b: &TypedElement) -> Vec<Check> {
    let m = b.degree().unwrap_or(0) as u32;
    let (mut bad, mut applicable, mut nontrivial) = (Vec::new(), 0, 0);
    for (t, n) in valid_pairs(m) {
        if !b.p_holds(t) || !b.q_holds(t, n) {
            continue;
        }
        applicable += 1;
        for reduced in [false, true] {
            if reduced && !b.in_b_tilde() {
                continue;
            }
            for (big_l, lhs) in ctx.dominant_system(b, t, n, reduced).expect("hypotheses were checked") {
                if !lhs.is_zero() {
                    bad.push((t, n, big_l, reduced));
                }
            }
        }
        let sets = index_sets(m, t, n).expect("valid");
        if sets.r.iter().any(|&r| !ctx.dominant_unknown(b, t, n, r).is_zero()) {
            nontrivial += 1;
        }
    }
    vec![
        Check::with(format!("dominant_system.{name}"), "sum_r (sum_l (-2)^l C(L,l) C(T-n-l,r-l)) u^r U^{(T+r+n)/2} = 0", bad.is_empty() && applicable > 0, || {
            format!("{bad:?}")
        }),
        measured(format!("dominant_system.{name}.coverage"), "(T, n) with P(T) and Q(n) / with a nonzero unknown (measured)", format!("{applicable} / {nontrivial}")),
    ]
}

/// `b_{m-j} = (b omega)_{m+2-j} - b_{m-j+1} omega_1 - b_{m-j+2} omega_0`.
pub fn omega_bookkeeping(wb: &Workbench, omega: &IwasawaElement, samples: &[IwasawaElement]) -> Vec<Check> {
    let uk = wb.uk();
    let mut bad = Vec::new();
    for (s, b) in samples.iter().enumerate() {
        let Some(m) = b.degree() else { continue };
        let bw = b.mul(omega, uk);
        for j in 0..=m {
            let mut rhs = bw.coeff(m + 2 - j);
            if j >= 1 {
                rhs = rhs.sub(&uk.mul(&b.coeff(m - j + 1), &omega.coeff(1)));
            }
            if j >= 2 {
                rhs = rhs.sub(&uk.mul(&b.coeff(m - j + 2), &omega.coeff(0)));
            }
            if rhs != b.coeff(m - j) {
                bad.push((s, j));
            }
        }
    }
    vec![Check::with("omega.bookkeeping", "b_{m-j} = (b omega)_{m+2-j} - b_{m-j+1} omega_1 - b_{m-j+2} omega_0", bad.is_empty(), || format!("{bad:?}"))]
}

/// `d(b_{m-j}) <= m + 2j` for every `j`.
pub fn has_degree_property(repth: &Repth, b: &IwasawaElement) -> Result<bool, crate::repth::RepthError> {
    let Some(m) = b.degree() else { return Ok(true) };
    for j in 0..=m {
        if let Some(d) = repth.kostant_degree(&b.coeff(m - j))? {
            if d as usize > m + 2 * j {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `n` with `d(b_{m-j}) <= m + 2n + 2j` for all `j`.
pub fn closure_exponent(repth: &Repth, b: &IwasawaElement) -> Result<u32, crate::repth::RepthError> {
    let Some(m) = b.degree() else { return Ok(0) };
    let mut n = 0;
    for j in 0..=m {
        if let Some(d) = repth.kostant_degree(&b.coeff(m - j))? {
            let need = (d as usize).saturating_sub(m + 2 * j).div_ceil(2);
            n = n.max(need as u32);
        }
    }
    Ok(n)
}

pub fn degree_closure(ctx: &SystemContext, omega: &IwasawaElement, samples: &[IwasawaElement]) -> Vec<Check> {
    let uk = ctx.wb.uk();
    let mut bad = Vec::new();
    let mut exps = Vec::new();
    for (s, b) in samples.iter().enumerate() {
        let mut run = || -> Result<bool, crate::repth::RepthError> {
            let n = closure_exponent(ctx.repth, b)?;
            exps.push(n);
            let mut bw = b.clone();
            for _ in 0..n {
                bw = bw.mul(omega, uk);
            }
            has_degree_property(ctx.repth, &bw)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => bad.push(format!("sample {s}")),
            Err(e) => bad.push(format!("sample {s}: {e}")),
        }
    }
    vec![
        Check::with("omega.degree_closure", "b omega^n has the degree property for the computed n", bad.is_empty() && !samples.is_empty(), || bad.join("; ")),
        measured("omega.degree_closure.exponents", "closure exponents n per sample (measured)", format!("{exps:?}")),
    ]
}

/// The `B~` predicate from stored labels against fresh Kostant degrees.
pub fn b_tilde_consistency(ctx: &SystemContext, samples: &[TypedElement]) -> Vec<Check> {
    let mut bad = Vec::new();
    for (s, b) in samples.iter().enumerate() {
        let mut fresh = true;
        for (r, ps) in b.parts.iter().enumerate().filter(|(r, _)| r % 2 == 0) {
            for (_, part) in ps {
                match ctx.repth.kostant_degree(part) {
                    Ok(Some(d)) if d as usize <= r => fresh = false,
                    Ok(_) => {}
                    Err(_) => fresh = false,
                }
            }
        }
        if fresh != b.in_b_tilde() {
            bad.push(s);
        }
    }
    vec![Check::with("b_tilde.consistent", "the B~ predicate agrees with the Kostant degrees of the even coefficients", bad.is_empty(), || format!("{bad:?}"))]
}

pub fn all(wb: &Workbench, seed: u64) -> Vec<Check> {
    match Repth::new(wb) {
        Ok(r) => all_with(&r, seed),
        Err(e) => vec![Check::with("combin.setup", "representation backend builds", false, || e.to_string())],
    }
}

/// Every check, with the caps of an existing backend.
pub fn all_with(repth: &Repth, seed: u64) -> Vec<Check> {
    let wb = repth.wb;
    let mut out = bookkeeping();
    out.extend(matrices_vs_generalized(3));
    out.extend(determinants(3, 6));
    let ctx = SystemContext::new(repth);
    out.extend(u_element(&ctx));
    out.extend(d_k_operators(&ctx, seed, 2));
    let omega = match wb.omega() {
        Ok(o) => o.omega,
        Err(e) => {
            out.push(Check::with("combin.omega", "omega is available", false, || e));
            return out;
        }
    };
    let typed_omega = match ctx.typed(&omega) {
        Ok(t) => t,
        Err(e) => {
            out.push(Check::with("combin.omega_types", "omega splits into pure K-types", false, || e.to_string()));
            return out;
        }
    };
    let one = ctx.typed(&IwasawaElement::one()).expect("1 is a K-type");
    out.extend(assemblies(&ctx, "one", &one, &[(0, 0, 0), (1, 1, 0), (2, 1, 1)]));
    out.extend(assemblies(&ctx, "omega", &typed_omega, &[(2, 1, 0), (2, 0, 1), (3, 2, 1), (2, 0, 0), (2, 1, 1), (2, 2, 0), (2, 0, 2)]));
    out.extend(script_e(&ctx, "omega", &typed_omega, 2));
    out.extend(dominant_systems(&ctx, "omega", &typed_omega));
    let invs = seeded_invariants(wb, seed ^ 0x5eed, 2);
    let samples: Vec<IwasawaElement> = invs.iter().map(|u| IwasawaElement::new(vec![Uea::zero(), Uea::zero(), u.clone()])).collect();
    out.extend(omega_bookkeeping(wb, &omega, &samples));
    out.extend(degree_closure(&ctx, &omega, &samples));
    let mut typed: Vec<TypedElement> = vec![typed_omega, one];
    typed.extend(samples.iter().filter_map(|b| ctx.typed(b).ok()));
    out.extend(b_tilde_consistency(&ctx, &typed));
    out
}
