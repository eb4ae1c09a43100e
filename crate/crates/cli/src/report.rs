use std::time::Duration;

use f4wb::check::{Check, Status};
use serde::{Deserialize, Serialize};

use crate::config::Config;

pub const SCHEMA_ID: &str = "f4wb-report/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(checks: &[Check]) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        Summary { total: checks.len(), pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) }
    }

    fn merge(self, o: Summary) -> Summary {
        Summary { total: self.total + o.total, pass: self.pass + o.pass, fail: self.fail + o.fail, skipped: self.skipped + o.skipped }
    }
}

/// The checks of one suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Section {
    pub suite: String,
    pub wall_time_secs: f64,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>, wall: Duration) -> Self {
        Section { suite: suite.into(), wall_time_secs: wall.as_secs_f64(), summary: Summary::of(&checks), checks }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub config: Config,
    pub wall_time_secs: f64,
    pub summary: Summary,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: &Config, sections: Vec<Section>, wall: Duration) -> Self {
        let summary = sections.iter().fold(Summary::default(), |acc, s| acc.merge(s.summary));
        Report {
            schema: SCHEMA_ID.into(),
            suite: suite.into(),
            seed: config.seed,
            config: config.clone(),
            wall_time_secs: wall.as_secs_f64(),
            summary,
            sections,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// One line per check, failures with their witness, then the totals.
    pub fn render(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for s in &self.sections {
            out.push_str(&format!("== {} [{:.2}s] {}/{} pass\n", s.suite, s.wall_time_secs, s.summary.pass, s.summary.total));
            for c in &s.checks {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                out.push_str(&format!("  {tag} {:<40} {}", c.id, c.anchor));
                if let Some(w) = &c.witness {
                    out.push_str(&format!("  [{w}]"));
                }
                out.push('\n');
            }
        }
        let s = self.summary;
        out.push_str(&format!("total {} pass {} fail {} skipped {} in {:.2}s\n", s.total, s.pass, s.fail, s.skipped, self.wall_time_secs));
        out
    }
}
