//! Single-purpose subcommands outside the suites.

use std::path::Path;
use std::time::Instant;

use f4wb::combin::{self, CombinError, DeterminantReport, SystemContext};
use f4wb::repth::Repth;
use f4wb::uea::{IwasawaElement, IwasawaJson, Workbench};
use f4wb::Rational;
use serde::Serialize;

use crate::report::{Report, Section};
use crate::{Config, Failure};

fn workbench() -> Result<Workbench, Failure> {
    Workbench::build().map_err(|e| Failure::Model(e.to_string()))
}

fn combin_failure(e: CombinError) -> Failure {
    match e {
        CombinError::Range(s) => Failure::Usage(s),
        other => Failure::Model(other.to_string()),
    }
}

/// Builds `V_{k,l}` and runs the construction, `m`-invariant and ladder checks on it.
pub fn repth_verify(cfg: &Config, k: u32, l: u32) -> Result<Report, Failure> {
    let start = Instant::now();
    let wb = workbench()?;
    let r = Repth::new(&wb).map_err(|e| Failure::Model(e.to_string()))?.with_cap(cfg.dimension_cap).with_degree_cap(cfg.degree_cap);
    let checks = f4wb::repth::battery::irreps(&r, &[(k, l)]);
    let name = format!("repth-verify-{k}-{l}");
    Ok(Report::new(name.clone(), cfg, vec![Section::new(name, checks, start.elapsed())], start.elapsed()))
}

#[derive(Debug, Serialize)]
pub struct MatrixOutput {
    pub m: u32,
    pub t: u32,
    pub n: u32,
    pub reduced: bool,
    /// Row indices `L(T,n)`.
    pub rows: Vec<u32>,
    /// Column indices `R_F(T,n)`, or the reduced set.
    pub cols: Vec<u32>,
    pub entries: Vec<Vec<Rational>>,
    pub rank: usize,
}

pub fn combin_matrix(t: u32, n: u32, m: u32, reduced: bool) -> Result<MatrixOutput, Failure> {
    let sm = combin::system_matrix::<Rational>(t, n, m, reduced).map_err(combin_failure)?;
    Ok(MatrixOutput { m, t, n, reduced, rank: sm.entries.rank(), rows: sm.rows, cols: sm.cols, entries: sm.entries.to_rows() })
}

pub fn combin_dets(k_max: usize, l_max: u32) -> Vec<DeterminantReport> {
    combin::determinant_table(k_max, l_max)
}

/// Assembles the congruences for the element stored in `input` at `T`, `n`
/// and every `l` with `l + n <= T` (or the given `l` only).
pub fn combin_assemble(cfg: &Config, input: &Path, t: u32, n: u32, l: Option<u32>) -> Result<Report, Failure> {
    let start = Instant::now();
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?;
    let json: IwasawaJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    if n > t || l.is_some_and(|l| l + n > t) {
        return Err(Failure::Usage(format!("need l + n <= T, got T = {t}, n = {n}, l = {l:?}")));
    }
    let wb = workbench()?;
    let b = IwasawaElement::from_json(&json, wb.names()).map_err(Failure::Usage)?;
    let r = Repth::new(&wb).map_err(|e| Failure::Model(e.to_string()))?.with_cap(cfg.dimension_cap).with_degree_cap(cfg.degree_cap);
    let ctx = SystemContext::new(&r);
    let typed = ctx.typed(&b).map_err(combin_failure)?;
    let cases: Vec<(u32, u32, u32)> = match l {
        Some(l) => vec![(t, l, n)],
        None => (0..=t - n).map(|l| (t, l, n)).collect(),
    };
    let checks = combin::battery::assemblies(&ctx, "input", &typed, &cases);
    Ok(Report::new("combin-assemble", cfg, vec![Section::new("combin-assemble", checks, start.elapsed())], start.elapsed()))
}
