//! Certification reports shared by every verification in the crate.
//!
//! A [`CertReport`] is a tree: each node names the claim it certifies, carries
//! the witnesses that justify it, and nests the reports it depends on. A node
//! can only pass when none of its children fail. Reports serialize to JSON
//! wrapped in a [`ReportDocument`] that carries a schema version.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Version of the JSON layout produced by [`ReportDocument`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("duplicate claim id `{0}` in merge")]
    DuplicateClaim(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Value stated in the published construction.
    Reference,
    /// Follows immediately from definitions.
    Elementary,
    /// Computed here by an independent route (enumeration, matrix arithmetic, ...).
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessValue {
    /// Exact integer or rational, printed in decimal (`p/q` for rationals).
    Exact {
        value: String,
    },
    /// Floating point observation together with the tolerance it was judged against.
    Float {
        value: f64,
        tolerance: f64,
    },
    /// An exact (in)equality between two sides.
    Relation {
        lhs: String,
        op: String,
        rhs: String,
        holds: bool,
    },
    Text {
        value: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    #[serde(flatten)]
    pub value: WitnessValue,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub claim_id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertReport>,
}

impl CertReport {
    pub fn new(claim_id: impl Into<String>, status: Status) -> Self {
        CertReport {
            claim_id: claim_id.into(),
            status,
            witnesses: Vec::new(),
            notes: Vec::new(),
            data: None,
            children: Vec::new(),
        }
    }

    pub fn pass(claim_id: impl Into<String>) -> Self {
        Self::new(claim_id, Status::Pass)
    }

    pub fn check(claim_id: impl Into<String>, ok: bool) -> Self {
        Self::new(claim_id, Status::from_bool(ok))
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records an exact value. Does not change the status.
    pub fn exact(
        mut self,
        label: impl Into<String>,
        value: impl fmt::Display,
        origin: Origin,
    ) -> Self {
        self.witnesses.push(Witness {
            label: label.into(),
            value: WitnessValue::Exact {
                value: value.to_string(),
            },
            origin,
        });
        self
    }

    /// Records an exact relation and fails the report if it does not hold.
    pub fn relation(
        mut self,
        label: impl Into<String>,
        lhs: impl fmt::Display,
        op: &str,
        rhs: impl fmt::Display,
        holds: bool,
        origin: Origin,
    ) -> Self {
        self.witnesses.push(Witness {
            label: label.into(),
            value: WitnessValue::Relation {
                lhs: lhs.to_string(),
                op: op.to_string(),
                rhs: rhs.to_string(),
                holds,
            },
            origin,
        });
        if !holds {
            self.status = Status::Fail;
        }
        self
    }

    /// Convenience for `lhs == rhs` relations.
    pub fn equal<T: PartialEq + fmt::Display>(
        self,
        label: impl Into<String>,
        lhs: T,
        rhs: T,
        origin: Origin,
    ) -> Self {
        let holds = lhs == rhs;
        self.relation(label, lhs, "=", rhs, holds, origin)
    }

    pub fn float(
        mut self,
        label: impl Into<String>,
        value: f64,
        tolerance: f64,
        origin: Origin,
    ) -> Self {
        self.witnesses.push(Witness {
            label: label.into(),
            value: WitnessValue::Float { value, tolerance },
            origin,
        });
        self
    }

    pub fn text(
        mut self,
        label: impl Into<String>,
        value: impl Into<String>,
        origin: Origin,
    ) -> Self {
        self.witnesses.push(Witness {
            label: label.into(),
            value: WitnessValue::Text {
                value: value.into(),
            },
            origin,
        });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn fail_if(mut self, failed: bool) -> Self {
        if failed {
            self.status = Status::Fail;
        }
        self
    }

    /// Appends a child; a failing child fails the parent.
    pub fn child(mut self, child: CertReport) -> Self {
        if child.status.is_fail() {
            self.status = Status::Fail;
        }
        self.children.push(child);
        self
    }

    pub fn children(self, children: impl IntoIterator<Item = CertReport>) -> Self {
        children.into_iter().fold(self, CertReport::child)
    }

    /// Depth-first search by claim id.
    pub fn find(&self, claim_id: &str) -> Option<&CertReport> {
        if self.claim_id == claim_id {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(claim_id))
    }

    /// Claim ids of every failing leaf-most report, depth first.
    pub fn failures(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_failures(&mut out);
        out
    }

    fn collect_failures<'a>(&'a self, out: &mut Vec<&'a str>) {
        if !self.status.is_fail() {
            return;
        }
        let failing_children: Vec<_> = self
            .children
            .iter()
            .filter(|c| c.status.is_fail())
            .collect();
        if failing_children.is_empty() {
            out.push(&self.claim_id);
        } else {
            for c in failing_children {
                c.collect_failures(out);
            }
        }
    }

    /// One line per direct child, failing children first.
    pub fn summary(&self) -> String {
        let mut lines = vec![format!("{}: {}", self.claim_id, self.status)];
        let (failed, rest): (Vec<_>, Vec<_>) =
            self.children.iter().partition(|c| c.status.is_fail());
        for c in failed.into_iter().chain(rest) {
            lines.push(format!("  [{}] {}", c.status, c.claim_id));
        }
        lines.join("\n")
    }

    pub fn count_leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(CertReport::count_leaves).sum()
        }
    }
}

/// Combines reports under a root named `merged`.
///
/// Children are ordered by claim id so the result does not depend on the order
/// in which the inputs were produced.
pub fn merge(reports: Vec<CertReport>) -> Result<CertReport, ReportError> {
    merge_as("merged", reports)
}

pub fn merge_as(claim_id: &str, mut reports: Vec<CertReport>) -> Result<CertReport, ReportError> {
    let mut seen = BTreeSet::new();
    for r in &reports {
        if !seen.insert(r.claim_id.clone()) {
            return Err(ReportError::DuplicateClaim(r.claim_id.clone()));
        }
    }
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(CertReport::pass(claim_id).children(reports))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub report: CertReport,
}

impl ReportDocument {
    pub fn new(report: CertReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            report,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
