//! Verification reports: ordered check records with pass/fail/skip status.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Name of the construction the check exercises, e.g. "watatani-index".
    pub anchor: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub message: String,
}

/// Check records kept sorted by id; insertion order breaks ties.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rec: CheckRecord) {
        let at = self.records.partition_point(|r| r.id <= rec.id);
        self.records.insert(at, rec);
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        status: Status,
        residual: Option<f64>,
        message: impl Into<String>,
    ) {
        self.push(CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status,
            residual,
            message: message.into(),
        });
    }

    pub fn check(&mut self, id: impl Into<String>, anchor: &str, ok: bool, message: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.record(id, anchor, status, None, message);
    }

    /// Pass iff `residual ≤ tol` (NaN fails).
    pub fn check_residual(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        residual: f64,
        tol: f64,
        message: impl Into<String>,
    ) {
        let status = if residual <= tol { Status::Pass } else { Status::Fail };
        self.record(id, anchor, status, Some(residual), message);
    }

    pub fn skip(&mut self, id: impl Into<String>, anchor: &str, message: impl Into<String>) {
        self.record(id, anchor, Status::Skip, None, message);
    }

    pub fn fail(&mut self, id: impl Into<String>, anchor: &str, message: impl Into<String>) {
        self.record(id, anchor, Status::Fail, None, message);
    }

    /// Merge another report, prefixing its ids with `prefix/`.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut r in other.records {
            if !prefix.is_empty() {
                r.id = format!("{prefix}/{}", r.id);
            }
            self.push(r);
        }
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn failure_ids(&self) -> Vec<String> {
        self.failures().map(|r| r.id.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Records whose id starts with `prefix`.
    pub fn filtered(&self, prefix: &str) -> Report {
        Report {
            records: self
                .records
                .iter()
                .filter(|r| r.id.starts_with(prefix))
                .cloned()
                .collect(),
        }
    }

    /// Largest recorded residual among records whose id starts with `prefix`.
    pub fn max_residual(&self, prefix: &str) -> f64 {
        self.records
            .iter()
            .filter(|r| r.id.starts_with(prefix))
            .filter_map(|r| r.residual)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            write!(f, "[{}] {} ({})", r.status, r.id, r.anchor)?;
            if let Some(res) = r.residual {
                write!(f, " residual={res:.3e}")?;
            }
            if !r.message.is_empty() {
                write!(f, " {}", r.message)?;
            }
            writeln!(f)?;
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "overall: {overall}")
    }
}
