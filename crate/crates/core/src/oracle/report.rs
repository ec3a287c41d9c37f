use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const REPORT_FORMAT: &str = "semihomology-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// a failure the check requires, such as the counterexample
    ExpectedFail,
    /// an outcome recorded without an expectation
    Recorded,
    /// a published claim that the computation contradicts
    Refuted,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExpectedFail => "expected_fail",
            Verdict::Recorded => "recorded",
            Verdict::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub window: Option<(i32, i32)>,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(check: &str, instance: impl Into<String>, verdict: Verdict, window: Option<(i32, i32)>, witness: Value) -> Self {
        CheckRecord {
            check: check.to_string(),
            instance: instance.into(),
            verdict,
            window,
            witness,
            elapsed_ms: None,
        }
    }

    /// `Pass` or `Fail` by a boolean.
    pub fn expect(check: &str, instance: impl Into<String>, ok: bool, window: Option<(i32, i32)>, witness: Value) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        CheckRecord::new(check, instance, verdict, window, witness)
    }

    pub fn error(check: &str, instance: impl Into<String>, e: &Error) -> Self {
        CheckRecord::new(check, instance, Verdict::Fail, None, serde_json::json!({ "error": e.to_string() }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub pass: usize,
    pub fail: usize,
    pub expected_fail: usize,
    pub recorded: usize,
    pub refuted: usize,
}

impl CheckCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::ExpectedFail => self.expected_fail += 1,
            Verdict::Recorded => self.recorded += 1,
            Verdict::Refuted => self.refuted += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.expected_fail + self.recorded + self.refuted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub totals: CheckCounts,
    pub by_check: BTreeMap<String, CheckCounts>,
    /// no failures, and an expected failure is present whenever the counterexample ran
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format: String,
    pub seed: Option<u64>,
    pub truncation: i32,
    pub checks: Vec<CheckRecord>,
    pub summary: ReportSummary,
}

impl VerificationReport {
    pub fn new(seed: Option<u64>, truncation: i32, checks: Vec<CheckRecord>) -> Self {
        let mut totals = CheckCounts::default();
        let mut by_check: BTreeMap<String, CheckCounts> = BTreeMap::new();
        for c in &checks {
            totals.add(c.verdict);
            by_check.entry(c.check.clone()).or_default().add(c.verdict);
        }
        let counterexample_ran = checks.iter().any(|c| c.check.starts_with("counterexample"));
        let success = totals.fail == 0 && (!counterexample_ran || totals.expected_fail > 0);
        VerificationReport {
            format: REPORT_FORMAT.to_string(),
            seed,
            truncation,
            checks,
            summary: ReportSummary {
                totals,
                by_check,
                success,
            },
        }
    }

    pub fn is_success(&self) -> bool {
        self.summary.success
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: VerificationReport = serde_json::from_str(s).map_err(|e| Error::Parse(format!("report: {e}")))?;
        if r.format != REPORT_FORMAT {
            return Err(Error::Parse(format!("unknown report format {:?}", r.format)));
        }
        Ok(r)
    }

    /// Per-check counts, then every record that is not a plain pass.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.summary.by_check.keys().map(String::len).max().unwrap_or(5).max(5);
        let _ = writeln!(
            out,
            "{:<width$}  {:>5}  {:>5}  {:>8}  {:>8}  {:>7}",
            "check", "pass", "fail", "expected", "recorded", "refuted"
        );
        for (name, c) in &self.summary.by_check {
            let _ = writeln!(
                out,
                "{name:<width$}  {:>5}  {:>5}  {:>8}  {:>8}  {:>7}",
                c.pass, c.fail, c.expected_fail, c.recorded, c.refuted
            );
        }
        let notable: Vec<&CheckRecord> = self.checks.iter().filter(|c| c.verdict != Verdict::Pass).collect();
        if !notable.is_empty() {
            let _ = writeln!(out);
            for c in notable {
                let window = c.window.map(|(a, b)| format!(" [{a}, {b}]")).unwrap_or_default();
                let _ = writeln!(out, "{:<13} {} :: {}{}", c.verdict.name(), c.check, c.instance, window);
                let _ = writeln!(out, "              {}", compact_witness(&c.witness));
            }
        }
        let t = &self.summary.totals;
        let _ = writeln!(
            out,
            "\n{} checks: {} pass, {} fail, {} expected failure, {} recorded, {} refuted => {}",
            t.total(),
            t.pass,
            t.fail,
            t.expected_fail,
            t.recorded,
            t.refuted,
            if self.summary.success { "OK" } else { "FAILED" }
        );
        out
    }
}

fn compact_witness(v: &Value) -> String {
    let mut v = v.clone();
    if let Value::Object(m) = &mut v {
        m.remove("instance_data");
    }
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}…", &s[..s.char_indices().take_while(|(i, _)| *i < 160).last().map_or(0, |(i, _)| i)])
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_round_trip() {
        let checks = vec![
            CheckRecord::expect("a", "x", true, Some((0, 3)), Value::Null),
            CheckRecord::new("counterexample.unit", "m", Verdict::ExpectedFail, None, serde_json::json!({"h": [0, 1]})),
        ];
        let r = VerificationReport::new(Some(7), 5, checks);
        assert!(r.is_success());
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_table().contains("expected_fail"));
        let missing = VerificationReport::new(None, 5, vec![CheckRecord::expect("counterexample.x", "m", true, None, Value::Null)]);
        assert!(!missing.is_success());
    }
}
