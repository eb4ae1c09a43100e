//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p f4wb --test acceptance -- --nocapture` to see the table.

use std::time::Instant;

use f4wb::check::Check;
use f4wb::combin::DegreeProfile;
use f4wb::liealg::battery as lie;
use f4wb::repth::battery::SMALL_LABELS;
use f4wb::repth::Repth;
use f4wb::rootdata::f4;
use f4wb::uea::Workbench;
use f4wb::{balg, combin, repth, uea};

const SEED: u64 = 7;

struct Criterion {
    number: u32,
    title: &'static str,
    checks: Vec<Check>,
    secs: f64,
}

impl Criterion {
    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {}: {verdict} {} ({} checks, {:.1}s)", self.number, self.title, self.checks.len(), self.secs)
    }
}

fn run(number: u32, title: &'static str, f: impl FnOnce() -> Vec<Check>) -> Criterion {
    let start = Instant::now();
    let checks = f();
    Criterion { number, title, checks, secs: start.elapsed().as_secs_f64() }
}

fn with_prefix(checks: Vec<Check>, prefixes: &[&str]) -> Vec<Check> {
    checks.into_iter().filter(|c| prefixes.iter().any(|p| c.id.starts_with(p))).collect()
}

/// `floor((3m - 2r + 2) / 2)` computed with signed division.
fn dr_oracle(m: i64, r: i64) -> u32 {
    (3 * m - 2 * r + 2).div_euclid(2) as u32
}

#[test]
fn acceptance() {
    let wb = Workbench::build().expect("model builds");
    let m = &wb.model;
    let r = Repth::new(&wb).expect("backend builds");
    let mut table = Vec::new();

    table.push(run(1, "model integrity: dimensions and Cartan types of g, k, m and g~", || {
        let mut out = with_prefix(lie::structure(m), &["dim.", "type.", "simple.k"]);
        let rs = f4::f4();
        out.push(Check::eq("oracle.roots", "F4 has 48 roots", f4::all_roots(&rs).len(), 48));
        out.push(Check::eq("oracle.k", "compact roots form B4", f4::compact_system(&rs).map(|s| s.cartan_type()).ok(), Some("B4".to_string())));
        out.push(Check::eq("oracle.m", "P- forms B3", f4::dump().p_minus_type, "B3".to_string()));
        out.push(Check::eq("oracle.dims", "dim g, dim k", (m.g.dim(), m.dim_k()), (52, 36)));
        out
    }));
    table.push(run(2, "normalization battery", || lie::normalizations(m)));
    table.push(run(3, "transversality ranks 33 and 36", || lie::transversality(m)));
    table.push(run(4, "Casimir projection: shape of omega, d(omega_0) <= 4, omega and omega^2 in B with nMax = 6", || {
        let mut out = uea::battery::omega_shape(&wb);
        let om = wb.omega().expect("omega");
        let d0 = r.kostant_degree(&om.omega.coeffs[0]);
        out.push(Check::with("omega.kostant_degree", "d(omega_0) <= 4", matches!(d0, Ok(Some(d)) if d <= 4), || format!("{d0:?}")));
        out.extend(balg::battery::omega_membership(&wb, Some(6)));
        out
    }));
    table.push(run(5, "polynomial calculus, t_ij, derivative identities, equivalence of the two systems, consequences on omega", || {
        let mut out = balg::battery::calculus();
        out.extend(balg::battery::identities(&wb));
        out.extend(with_prefix(balg::battery::membership(&wb, None), &["tij.", "tri.", "edot.c.", "edot.b.", "shift."]));
        out.extend(balg::battery::equivalence_seeded(&wb, SEED, 8));
        out
    }));
    table.push(run(6, "representation battery on the small labels", || repth::battery::irreps(&r, &SMALL_LABELS)));
    table.push(run(7, "Kostant degree: d(1) = 0, the bound on 20 seeded samples, additivity on 10 seeded pairs", || {
        let mut out = with_prefix(repth::battery::kostant(&r), &["kostant.one"]);
        out.extend(repth::battery::sampled_degrees(&r, SEED, 20, 10));
        out
    }));
    table.push(run(8, "combinatorics of the linear systems and their assemblies", || {
        let mut out: Vec<Check> = (0..=4u32)
            .map(|mm| {
                let want: Vec<u32> = (0..=mm).map(|rr| dr_oracle(mm.into(), rr.into())).collect();
                Check::eq(format!("dr.m{mm}"), "d_r table matches the floor formula", DegreeProfile::new(mm).dr, want)
            })
            .collect();
        out.extend(combin::battery::all_with(&r, SEED));
        out
    }));
    table.push(run(9, "statement-level tests of the congruence and vanishing theorems", || {
        let mut out = balg::congruence::all(&wb);
        out.extend(repth::battery::dominant_in_ideal(&r, 3, &[(0, 0), (1, 0), (0, 1), (0, 2), (1, 1)]));
        out
    }));

    println!("acceptance (seed {SEED})");
    for c in &table {
        println!("{}", c.line());
    }
    let failed: Vec<String> = table
        .iter()
        .filter(|c| !c.passed())
        .flat_map(|c| c.checks.iter().filter(|k| !k.passed()).map(move |k| format!("{}: {} [{:?}]", c.number, k.id, k.witness)))
        .collect();
    assert!(failed.is_empty(), "failing checks:\n{}", failed.join("\n"));
}
