use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Float,
}

/// One named check. Exact checks pass iff the residual is identically zero;
/// float checks iff the residual is within `tolerance`. A check whose
/// computation errored or was refused carries `error` and fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub identity: String,
    pub kind: CheckKind,
    pub passed: bool,
    /// Largest residual coefficient, or the relative error of a float check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall time; kept out of the JSON so exact-mode reports are
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scenario: String,
    pub mode: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, scenario: &str, mode: &str, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Self {
            suite: suite.into(),
            scenario: scenario.into(),
            mode: mode.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let residual = match (c.kind, c.residual) {
                (_, None) => "-".to_string(),
                (CheckKind::Exact, Some(0.0)) => "exact 0".to_string(),
                (_, Some(r)) => format!("{r:.3e}"),
            };
            let _ = write!(out, "{status} {:<60} {residual:>12} {:>9.3}ms", c.name, c.elapsed.as_secs_f64() * 1e3);
            if let Some(e) = &c.error {
                let _ = write!(out, "  error: {e}");
            } else if let Some(w) = c.witness.as_ref().filter(|_| !c.passed) {
                let _ = write!(out, "  witness: {w}");
            }
            out.push('\n');
            if let Some(v) = &c.value {
                let _ = writeln!(out, "     {v}");
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "suite {} on {} ({} mode): {} checks, {} failed: {}",
            self.suite,
            self.scenario,
            self.mode,
            self.checks.len(),
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}
