//! Witness-carrying results of identity checks.

use crate::scalar::Q;

/// One failed instance of an identity: the basis tuple it was evaluated on
/// and the two sides as coordinate vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<usize>,
    pub left: Vec<Q>,
    pub right: Vec<Q>,
}

/// How many basis tuples an identity was evaluated on and how many failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckTally {
    pub identity: String,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ViolationReport {
    pub checks: Vec<CheckTally>,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, identity: &str, evaluated: usize, mut violations: Vec<Violation>) {
        violations.sort_by(|a, b| a.witness.cmp(&b.witness));
        let failed = violations
            .iter()
            .map(|v| &v.witness)
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        self.checks.push(CheckTally {
            identity: identity.to_string(),
            evaluated,
            failed,
        });
        self.violations.extend(violations);
    }

    pub fn merge(&mut self, other: ViolationReport) {
        self.checks.extend(other.checks);
        self.violations.extend(other.violations);
    }

    /// Prefixes every identity tag, for nesting a sub-check's report.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.identity = format!("{prefix}: {}", c.identity);
        }
        for v in &mut self.violations {
            v.identity = format!("{prefix}: {}", v.identity);
        }
        self
    }

    pub fn failed_identities(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.failed > 0)
            .map(|c| c.identity.as_str())
            .collect()
    }
}
