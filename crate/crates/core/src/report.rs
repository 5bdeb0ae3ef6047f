//! Machine-readable outcome records shared by the identity suites, the
//! presentation search and the CLI. Reports are schema-versioned
//! (`report/1`) and deterministic: case records are emitted in a stable
//! order and all numbers are exact strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const REPORT_FORMAT: &str = "report/1";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: String,
    /// Exact-string inputs, keyed by parameter name.
    pub inputs: BTreeMap<String, String>,
    pub status: CaseStatus,
    /// Rendered nonzero defect or error message for failing cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseRecord {
    pub fn new(suite: impl Into<String>) -> Self {
        CaseRecord {
            suite: suite.into(),
            inputs: BTreeMap::new(),
            status: CaseStatus::Pass,
            defect: None,
            note: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn pass(mut self) -> Self {
        self.status = CaseStatus::Pass;
        self
    }

    pub fn fail(mut self, defect: impl ToString) -> Self {
        self.status = CaseStatus::Fail;
        self.defect = Some(defect.to_string());
        self
    }

    pub fn error(mut self, msg: impl ToString) -> Self {
        self.status = CaseStatus::Error;
        self.defect = Some(msg.to_string());
        self
    }

    pub fn skipped(mut self, note: impl ToString) -> Self {
        self.status = CaseStatus::Skipped;
        self.note = Some(note.to_string());
        self
    }

    pub fn with_note(mut self, note: impl ToString) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZhuReport {
    pub format: String,
    pub tool_version: String,
    pub config: serde_json::Value,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    /// Populated only on request so that default reports are
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<String>,
}

impl ZhuReport {
    pub fn new(config: serde_json::Value, cases: Vec<CaseRecord>) -> Self {
        let mut summary = Summary { total: cases.len(), ..Summary::default() };
        for c in &cases {
            match c.status {
                CaseStatus::Pass => summary.passed += 1,
                CaseStatus::Fail => summary.failed += 1,
                CaseStatus::Error => summary.errors += 1,
                CaseStatus::Skipped => summary.skipped += 1,
            }
        }
        ZhuReport {
            format: REPORT_FORMAT.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            cases,
            summary,
            timing_ms: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errors == 0
    }
}
