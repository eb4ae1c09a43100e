//! Pass/fail records shared by every verification battery.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Human-readable statement of the identity being checked.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        // Failures always carry a witness; callers with more detail overwrite it.
        let (status, witness) = if ok { (Status::Pass, None) } else { (Status::Fail, Some("the stated condition is false".to_string())) };
        Check { id: id.into(), anchor: anchor.into(), status, witness }
    }

    /// A check whose witness is recorded on failure only.
    pub fn with(id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        let mut c = Self::new(id, anchor, ok);
        if !ok {
            c.witness = Some(witness());
        }
        c
    }

    /// Compares two displayable values; the witness shows both on mismatch.
    pub fn eq<T: PartialEq + std::fmt::Debug>(id: impl Into<String>, anchor: impl Into<String>, got: T, want: T) -> Self {
        let ok = got == want;
        Self::with(id, anchor, ok, || format!("got {got:?}, expected {want:?}"))
    }

    pub fn skipped(id: impl Into<String>, anchor: impl Into<String>, why: impl Into<String>) -> Self {
        Check { id: id.into(), anchor: anchor.into(), status: Status::Skipped, witness: Some(why.into()) }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Ensures every check passed, returning the failures otherwise.
pub fn all_pass(checks: &[Check]) -> Result<(), Vec<Check>> {
    let failed: Vec<Check> = checks.iter().filter(|c| !c.passed()).cloned().collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed)
    }
}
