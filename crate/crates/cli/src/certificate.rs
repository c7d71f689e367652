//! Certificates: a versioned JSON record of a run. Everything except the
//! optional timing fields is a function of the configuration and the tool
//! version, so two runs of the same command produce identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "pipedegen";

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Stopped by the time budget or a capacity limit before finishing.
    Partial,
    /// Reported for the record; does not count towards the verdict.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self {
            name: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub subject: String,
    pub status: Status,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CheckResult {
    pub fn new(name: &str, subject: impl Into<String>, status: Status, payload: Value) -> Self {
        Self {
            name: name.into(),
            subject: subject.into(),
            status,
            payload,
            error: None,
            elapsed_ms: None,
        }
    }

    pub fn verdict(name: &str, subject: impl Into<String>, pass: bool, payload: Value) -> Self {
        Self::new(
            name,
            subject,
            if pass { Status::Pass } else { Status::Fail },
            payload,
        )
    }

    pub fn partial(name: &str, subject: impl Into<String>, error: impl Into<String>) -> Self {
        Self {
            error: Some(error.into()),
            ..Self::new(name, subject, Status::Partial, Value::Null)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub partial: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: String,
    pub config: Value,
    pub status: Status,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Certificate {
    pub fn new(command: &str, config: Value, checks: Vec<CheckResult>) -> Self {
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Partial => summary.partial += 1,
                Status::Info => summary.info += 1,
            }
        }
        let status = if summary.failed > 0 {
            Status::Fail
        } else if summary.partial > 0 {
            Status::Partial
        } else {
            Status::Pass
        };
        Self {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::default(),
            command: command.into(),
            config,
            status,
            summary,
            checks,
            timings: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Info => 0,
            Status::Fail => 1,
            Status::Partial => 3,
        }
    }

    /// Pretty JSON with a trailing newline. Object keys inside payloads are
    /// sorted, struct fields keep declaration order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn checks_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdict_and_exit_codes() {
        let pass = CheckResult::verdict("a", "x", true, json!({}));
        let fail = CheckResult::verdict("a", "y", false, json!({}));
        let part = CheckResult::partial("a", "z", "budget");
        let info = CheckResult::new("census", "all", Status::Info, json!({}));
        assert_eq!(
            Certificate::new("t", Value::Null, vec![pass.clone(), info.clone()]).exit_code(),
            0
        );
        assert_eq!(
            Certificate::new("t", Value::Null, vec![pass.clone(), part.clone()]).exit_code(),
            3
        );
        let c = Certificate::new("t", Value::Null, vec![pass, fail, part, info]);
        assert_eq!(c.exit_code(), 1);
        assert_eq!(
            (
                c.summary.passed,
                c.summary.failed,
                c.summary.partial,
                c.summary.info
            ),
            (1, 1, 1, 1)
        );
    }

    #[test]
    fn json_round_trip_is_stable() {
        let c = Certificate::new(
            "t",
            json!({"b": 1, "a": [1, 2]}),
            vec![CheckResult::partial("a", "z", "budget")],
        );
        let s = c.to_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(!s.contains("elapsed_ms"));
        let back = Certificate::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), s);
    }
}
