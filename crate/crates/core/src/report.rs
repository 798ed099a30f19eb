//! Named pass/fail checks collected into reports.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub module: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(module: &str, check: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { module: module.into(), check: check.into(), passed, detail: detail.into() }
    }
}

/// Appends a check and returns whether it passed.
pub fn record(checks: &mut Vec<Check>, module: &str, check: &str, passed: bool, detail: impl Into<String>) -> bool {
    checks.push(Check::new(module, check, passed, detail));
    passed
}
