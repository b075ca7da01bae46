//! Command reports in JSON and plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hlts_core::{format_rational, ViolationReport, Q};
use serde::Serialize;
use serde_json::Value;

use crate::format::Document;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Computed,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TallyOut {
    pub identity: String,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationOut {
    pub identity: String,
    pub witness: Vec<usize>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
    pub tallies: Vec<TallyOut>,
    pub violations: Vec<ViolationOut>,
}

impl CheckOut {
    pub fn from_report(name: impl Into<String>, report: &ViolationReport) -> Self {
        let strings = |v: &[Q]| v.iter().map(format_rational).collect();
        CheckOut {
            name: name.into(),
            pass: report.pass(),
            tallies: report
                .checks
                .iter()
                .map(|c| TallyOut {
                    identity: c.identity.clone(),
                    evaluated: c.evaluated,
                    failed: c.failed,
                })
                .collect(),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationOut {
                    identity: v.identity.clone(),
                    witness: v.witness.clone(),
                    left: strings(&v.left),
                    right: strings(&v.right),
                })
                .collect(),
        }
    }

    /// A yes/no check with no identity breakdown.
    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        CheckOut {
            name: name.into(),
            pass,
            tallies: Vec::new(),
            violations: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    pub checks: Vec<CheckOut>,
    pub quantities: BTreeMap<String, Value>,
    pub messages: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<Document>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            status: Status::Computed,
            exit_code: EXIT_OK,
            checks: Vec::new(),
            quantities: BTreeMap::new(),
            messages: Vec::new(),
            document: None,
        }
    }

    pub fn error(command: Vec<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.exit_code = EXIT_INPUT;
        r.messages.push(message.into());
        r
    }

    pub fn check(&mut self, name: impl Into<String>, report: &ViolationReport) {
        self.checks.push(CheckOut::from_report(name, report));
    }

    pub fn flag(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(CheckOut::flag(name, pass));
    }

    pub fn quantity(&mut self, key: &str, value: impl Into<Value>) {
        self.quantities.insert(key.to_string(), value.into());
    }

    /// Sets the status from the checks: any failure gives exit code 1.
    /// Reports without checks count as completed computations.
    pub fn settle(&mut self) {
        if self.status == Status::Error {
            return;
        }
        if self.checks.iter().any(|c| !c.pass) {
            self.status = Status::Fail;
            self.exit_code = EXIT_VIOLATIONS;
        } else {
            self.status = if self.checks.is_empty() {
                Status::Computed
            } else {
                Status::Pass
            };
            self.exit_code = EXIT_OK;
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Computed => "computed",
            Status::Error => "error",
        };
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "status: {status} (exit {})", self.exit_code);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name);
            for t in &c.tallies {
                let _ = writeln!(
                    out,
                    "  {}: {} evaluated, {} failed",
                    t.identity, t.evaluated, t.failed
                );
            }
            for v in &c.violations {
                let _ = writeln!(
                    out,
                    "  violated {} at {:?}: left [{}], right [{}]",
                    v.identity,
                    v.witness,
                    v.left.join(", "),
                    v.right.join(", ")
                );
            }
        }
        for (k, v) in &self.quantities {
            let _ = writeln!(out, "{k} = {v}");
        }
        for m in &self.messages {
            let _ = writeln!(out, "{m}");
        }
        out
    }
}
