//! Machine-readable run reports.
//!
//! Every driver command produces one [`Report`]: the command and its
//! parameters echoed back, a record per check performed, and a total
//! failure count. Reports carry a schema version from day one and are
//! deterministic — ordered maps, no timestamps — so identical
//! configurations yield byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version of the report JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one named check within a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// What was checked.
    pub name: String,
    /// How many individual assertions were evaluated.
    pub instances: u64,
    /// How many of them failed.
    pub failures: u64,
    /// Auxiliary tallies (mode, thresholds, bit counts), stringly-typed
    /// and ordered for byte-stable serialization.
    pub details: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            instances: 0,
            failures: 0,
            details: BTreeMap::new(),
        }
    }

    /// Count one assertion, failed or passed.
    pub fn tally(&mut self, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
        }
    }

    /// Attach an auxiliary detail value.
    pub fn detail(&mut self, key: impl Into<String>, value: impl ToString) {
        self.details.insert(key.into(), value.to_string());
    }
}

/// One command's full result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    /// The invoked command (e.g. `"verify fpma"`).
    pub command: String,
    /// Echo of every parameter that shaped the run.
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    /// Sum of per-check failures; the process exits zero iff this is zero.
    pub failures: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            failures: 0,
        }
    }

    pub fn parameter(&mut self, key: impl Into<String>, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn push_check(&mut self, check: CheckRecord) {
        self.failures += check.failures;
        self.checks.push(check);
    }

    pub fn is_success(&self) -> bool {
        self.failures == 0
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }

    /// Parse and validate a report produced by [`Self::to_json`].
    pub fn from_json(json: &str) -> Result<Self> {
        let report: Report = serde_json::from_str(json)?;
        if report.schema != SCHEMA_VERSION {
            return Err(Error::parse(format!(
                "unsupported report schema {} (expected {SCHEMA_VERSION})",
                report.schema
            )));
        }
        let total: u64 = report.checks.iter().map(|c| c.failures).sum();
        if total != report.failures {
            return Err(Error::parse(format!(
                "report claims {} failures but checks sum to {total}",
                report.failures
            )));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut report = Report::new("verify fpma");
        report.parameter("b", 2);
        report.parameter("d", 2);
        let mut check = CheckRecord::new("isomorphism");
        check.tally(true);
        check.tally(true);
        check.detail("mode", "exhaustive");
        report.push_check(check);
        report
    }

    #[test]
    fn roundtrip_and_determinism() {
        let report = sample();
        let json = report.to_json().unwrap();
        assert_eq!(json, sample().to_json().unwrap(), "byte-identical reruns");
        let parsed = Report::from_json(&json).unwrap();
        assert_eq!(parsed, report);
        assert!(parsed.is_success());
    }

    #[test]
    fn failures_accumulate_and_validate() {
        let mut report = sample();
        let mut check = CheckRecord::new("broken");
        check.tally(false);
        check.tally(true);
        report.push_check(check);
        assert_eq!(report.failures, 1);
        assert!(!report.is_success());

        let json = report.to_json().unwrap();
        // The top-level count sits at two-space indent; nudge only it.
        let tampered = json.replace("\n  \"failures\": 1", "\n  \"failures\": 7");
        assert_ne!(tampered, json);
        assert!(Report::from_json(&tampered).is_err());
        let wrong_schema = json.replace("\"schema\": 1", "\"schema\": 9");
        assert!(Report::from_json(&wrong_schema).is_err());
    }
}
