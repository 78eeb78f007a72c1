//! Check and computation records shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being instantiated, written out as a formula.
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputationRecord {
    pub quantity: String,
    pub labels: Vec<(String, String)>,
    /// Exact values as `p/q` (or cyclotomic) strings.
    pub values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub computations: Vec<ComputationRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Record a check; `witness` is `None` on success.
    pub fn check(&mut self, name: impl Into<String>, identity: impl Into<String>, witness: Option<String>) {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.checks.push(CheckRecord {
            name: name.into(),
            identity: identity.into(),
            status,
            witness,
            detail: None,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, identity: impl Into<String>, why: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.into(),
            identity: identity.into(),
            status: Status::Skip,
            witness: None,
            detail: Some(why.into()),
        });
    }

    pub fn compute(&mut self, rec: ComputationRecord) {
        self.computations.push(rec);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.computations.extend(other.computations);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}
