//! Versioned suite reports in text and JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "qbundle.suite-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// Catalog entry describing the identity.
    pub reference: String,
    pub status: Status,
    /// Counterexample on failure, reason when skipped, witness for negative claims.
    pub witness: Option<String>,
    /// Word-length budget of the truncated checks.
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub example: String,
    pub suite: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub engine_version: String,
    pub runtime_ms: u64,
}

impl SuiteReport {
    pub fn new(example: &str, suite: &str, checks: Vec<CheckRecord>, runtime_ms: u64) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
        SuiteReport {
            schema: SCHEMA.into(),
            example: example.into(),
            suite: suite.into(),
            status,
            checks,
            engine_version: ENGINE_VERSION.into(),
            runtime_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        let r: SuiteReport = serde_json::from_str(s)?;
        if r.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!("unsupported schema `{}`", r.schema)));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        let mut out = format!(
            "{} [{}]: {} ({} passed, {} failed, {} skipped) in {} ms\n",
            self.example,
            self.suite,
            match self.status {
                Status::Pass => "PASS",
                _ => "FAIL",
            },
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped),
            self.runtime_ms
        );
        let width = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let pad = width - c.id.chars().count();
            let _ = writeln!(out, "  {tag}  {}{}  {}", c.id, " ".repeat(pad), c.reference);
            if let Some(w) = &c.witness {
                if c.status != Status::Pass {
                    let _ = writeln!(out, "        {w}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn any_failure_fails_the_report() {
        let rec = |s| CheckRecord { id: "x".into(), reference: "r".into(), status: s, witness: None, budget: None };
        assert!(SuiteReport::new("e", "s", vec![rec(Status::Pass), rec(Status::Skipped)], 0).passed());
        assert!(!SuiteReport::new("e", "s", vec![rec(Status::Pass), rec(Status::Fail)], 0).passed());
    }

    #[test]
    fn foreign_schema_is_rejected() {
        let r = SuiteReport::new("e", "s", vec![], 1);
        let s = r.to_json().replace(SCHEMA, "other/9");
        assert!(SuiteReport::from_json(&s).is_err());
        assert_eq!(SuiteReport::from_json(&r.to_json()).unwrap(), r);
    }
}
