//! Structured audit findings.

use serde::Serialize;
use serde_json::{Map, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Confirmed,
    Discrepant,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub check: String,
    pub verdict: Verdict,
    pub evidence: Map<String, Json>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub tolerances: Map<String, Json>,
}

impl Finding {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Finding {
            check: check.into(),
            verdict,
            evidence: Map::new(),
            tolerances: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.evidence
            .insert(key.to_string(), serde_json::to_value(value).expect("evidence serializes"));
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), Json::from(value));
        self
    }
}

/// Ordered list of findings; order is part of the output contract.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub findings: Vec<Finding>,
}

impl AuditReport {
    pub fn new() -> Self {
        AuditReport::default()
    }

    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.findings.extend(other.findings);
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.findings.iter().filter(|f| f.verdict == v).count()
    }

    pub fn has_discrepancy(&self) -> bool {
        self.count(Verdict::Discrepant) > 0
    }

    pub fn find(&self, check: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.check == check)
    }

    pub fn summary(&self) -> Json {
        serde_json::json!({
            "confirmed": self.count(Verdict::Confirmed),
            "discrepant": self.count(Verdict::Discrepant),
            "info": self.count(Verdict::Info),
        })
    }
}

pub(crate) fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Confirmed
    } else {
        Verdict::Discrepant
    }
}
