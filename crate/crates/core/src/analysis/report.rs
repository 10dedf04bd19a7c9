// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;
use serde_json::Value;

use super::mindist::ParamReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Outcome of one suite instance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub instance: String,
    pub status: Status,
    pub expected: Value,
    pub observed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: &str, instance: String, expected: Value, observed: Value) -> CheckReport {
        let status = Status::from_bool(expected == observed);
        CheckReport { suite: suite.into(), instance, status, expected, observed, params: None, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_params(mut self, params: ParamReport) -> CheckReport {
        self.params = Some(params);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> CheckReport {
        self.notes.push(note.into());
        self
    }

    /// Forces failure when a side condition does not hold.
    pub fn require(mut self, ok: bool, what: &str) -> CheckReport {
        if !ok {
            self.status = Status::Fail;
            self.notes.push(format!("failed: {what}"));
        }
        self
    }

    /// One line: `status suite instance expected=... observed=...`.
    pub fn to_text(&self) -> String {
        let mut line = format!(
            "{} {} {} expected={} observed={}",
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            },
            self.suite,
            self.instance,
            self.expected,
            self.observed
        );
        if let Some(p) = &self.params {
            line.push_str(&format!(" params={}", serde_json::to_string(p).expect("plain data")));
        }
        for n in &self.notes {
            line.push_str(&format!(" note={n:?}"));
        }
        line
    }
}
