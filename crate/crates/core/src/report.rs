//! Check reports and their three renderings: a human table, CSV, and a
//! machine-readable structured form that round-trips.
//!
//! Rationals render as `p/q`, never as decimals, and record order is the
//! execution order, so rendered reports are byte-stable across runs and
//! platforms. Wall time is deliberately kept out of the records (it would
//! break byte-stability); the CLI reports timing separately.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Violated,
    Inapplicable,
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::Violated => "violated",
            CheckStatus::Inapplicable => "inapplicable",
        }
    }
}

impl From<crate::bounds::CheckStatus> for CheckStatus {
    fn from(s: crate::bounds::CheckStatus) -> Self {
        match s {
            crate::bounds::CheckStatus::Holds => CheckStatus::Holds,
            crate::bounds::CheckStatus::Violated => CheckStatus::Violated,
            crate::bounds::CheckStatus::Inapplicable => CheckStatus::Inapplicable,
        }
    }
}

/// One executed check: its name, a digest of its inputs, the verdict, and
/// ordered `key = value` detail pairs (witnesses, exact rationals, counts).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub digest: String,
    pub status: CheckStatus,
    pub details: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn all_hold(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.status != CheckStatus::Violated)
    }

    pub fn any_violated(&self) -> bool {
        !self.all_hold()
    }
}

/// Short stable digest of a check's inputs.
pub fn digest(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p.as_bytes());
        hasher.update([0u8]);
    }
    let bytes = hasher.finalize();
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn emit_text(report: &Report) -> String {
    let name_width = report
        .records
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_width$}  {:<12}  details\n",
        "check", "result"
    ));
    for r in &report.records {
        let details = r
            .details
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "{:<name_width$}  {:<12}  {}\n",
            r.name,
            r.status.label(),
            details
        ));
    }
    out
}

pub fn emit_csv(report: &Report) -> String {
    let mut out = String::from("name,digest,result,details\n");
    for r in &report.records {
        let details = r
            .details
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},\"{}\"\n",
            r.name,
            r.digest,
            r.status.label(),
            details.replace('"', "\"\"")
        ));
    }
    out
}

pub fn emit_structured(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn parse_structured(s: &str) -> Result<Report> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("structured report: {e}")))
}
