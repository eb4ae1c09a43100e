//! Suites are split into tasks that each build their own model, so the
//! pool needs nothing shared between threads beyond the configuration.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use f4wb::check::Check;
use f4wb::liealg::{battery as lie, F4Model};
use f4wb::repth::Repth;
use f4wb::uea::Workbench;

use crate::report::{Report, Section};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Model,
    Transversality,
    Uea,
    Balg,
    Repth,
    Combin,
    Omega,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [Suite::Model, Suite::Transversality, Suite::Uea, Suite::Balg, Suite::Repth, Suite::Combin, Suite::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Model => "model",
            Suite::Transversality => "transversality",
            Suite::Uea => "uea",
            Suite::Balg => "balg",
            Suite::Repth => "repth",
            Suite::Combin => "combin",
            Suite::Omega => "omega",
            Suite::All => "all",
        }
    }

    fn tasks(self) -> Vec<Task> {
        let t = |part: &'static str, run: fn(&Config) -> Vec<Check>| Task { suite: self, part, run };
        match self {
            Suite::Model => vec![t("model", model)],
            Suite::Transversality => vec![t("transversality", transversality)],
            Suite::Uea => vec![t("uea", uea)],
            Suite::Balg => vec![t("balg", balg), t("balg-seeded", balg_seeded), t("congruences", congruences)],
            Suite::Repth => vec![t("repth", repth), t("repth-seeded", repth_seeded)],
            Suite::Combin => vec![t("combin", combin)],
            Suite::Omega => vec![t("omega", omega)],
            Suite::All => Suite::EACH.iter().flat_map(|s| s.tasks()).collect(),
        }
    }
}

struct Task {
    suite: Suite,
    part: &'static str,
    run: fn(&Config) -> Vec<Check>,
}

fn setup_failure(what: &str, err: impl ToString) -> Vec<Check> {
    vec![Check::with(format!("{what}.setup"), format!("{what} can be constructed"), false, || err.to_string())]
}

fn with_model(f: impl FnOnce(&F4Model) -> Vec<Check>) -> Vec<Check> {
    F4Model::build().map_or_else(|e| setup_failure("model", e), |m| f(&m))
}

fn with_workbench(f: impl FnOnce(&Workbench) -> Vec<Check>) -> Vec<Check> {
    Workbench::build().map_or_else(|e| setup_failure("workbench", e), |wb| f(&wb))
}

fn with_repth(cfg: &Config, f: impl FnOnce(&Repth) -> Vec<Check>) -> Vec<Check> {
    with_workbench(|wb| match Repth::new(wb) {
        Ok(r) => f(&r.with_cap(cfg.dimension_cap).with_degree_cap(cfg.degree_cap)),
        Err(e) => setup_failure("repth", e),
    })
}

fn model(_: &Config) -> Vec<Check> {
    with_model(|m| [lie::structure(m), lie::normalizations(m), lie::subspaces(m)].concat())
}

fn transversality(_: &Config) -> Vec<Check> {
    with_model(lie::transversality)
}

fn uea(cfg: &Config) -> Vec<Check> {
    with_workbench(|wb| f4wb::uea::battery::all(wb, cfg.seed))
}

fn balg(cfg: &Config) -> Vec<Check> {
    with_workbench(|wb| f4wb::balg::battery::all(wb, cfg.n_max))
}

fn balg_seeded(cfg: &Config) -> Vec<Check> {
    with_workbench(|wb| f4wb::balg::battery::equivalence_seeded(wb, cfg.seed, 8))
}

fn congruences(_: &Config) -> Vec<Check> {
    with_workbench(f4wb::balg::congruence::all)
}

fn repth(cfg: &Config) -> Vec<Check> {
    with_repth(cfg, f4wb::repth::battery::all)
}

fn repth_seeded(cfg: &Config) -> Vec<Check> {
    with_repth(cfg, |r| f4wb::repth::battery::sampled_degrees(r, cfg.seed, 20, 10))
}

fn combin(cfg: &Config) -> Vec<Check> {
    with_repth(cfg, |r| f4wb::combin::battery::all_with(r, cfg.seed))
}

fn omega(cfg: &Config) -> Vec<Check> {
    with_repth(cfg, |r| {
        let wb = r.wb;
        let mut out = f4wb::uea::battery::omega_shape(wb);
        if let Ok(om) = wb.omega() {
            let d0 = r.kostant_degree(&om.omega.coeffs[0]);
            out.push(Check::with("omega.kostant_degree", "d(omega_0) <= 4", matches!(d0, Ok(Some(d)) if d <= 4), || format!("{d0:?}")));
        }
        out.extend(f4wb::balg::battery::omega_membership(wb, cfg.n_max));
        out
    })
}

/// Runs `tasks` on at most `workers` threads and returns the results in
/// task order. A panicking task becomes a failed check.
fn run_pool(tasks: &[Task], cfg: &Config, workers: usize) -> Vec<(Vec<Check>, Duration)> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Vec<Check>, Duration)>>> = Mutex::new(tasks.iter().map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, tasks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(i) else { break };
                let start = Instant::now();
                let checks = catch_unwind(AssertUnwindSafe(|| (task.run)(cfg))).unwrap_or_else(|p| {
                    let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
                    vec![Check::with(format!("{}.panic", task.part), "task completes", false, || msg)]
                });
                results.lock().expect("no poisoned results")[i] = Some((checks, start.elapsed()));
            });
        }
    });
    results.into_inner().expect("no poisoned results").into_iter().map(|r| r.expect("every task ran")).collect()
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Report {
    let start = Instant::now();
    let tasks = suite.tasks();
    let results = run_pool(&tasks, cfg, cfg.parallelism);
    let mut sections: Vec<Section> = Vec::new();
    for (task, (checks, wall)) in tasks.iter().zip(results) {
        match sections.last_mut() {
            Some(s) if s.suite == task.suite.name() => {
                let merged = Section::new(task.suite.name(), [std::mem::take(&mut s.checks), checks].concat(), Duration::from_secs_f64(s.wall_time_secs) + wall);
                *s = merged;
            }
            _ => sections.push(Section::new(task.suite.name(), checks, wall)),
        }
    }
    Report::new(suite.name(), cfg, sections, start.elapsed())
}
