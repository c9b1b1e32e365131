//! Scenario runner for the morita toolkit.
//!
//! A scenario is a JSON file of named groups, algebras, bundles, bimodules,
//! actions and involutions followed by an ordered task list. Running it
//! produces one [`Report`] whose ids are prefixed by the task ids.

pub mod demos;
pub mod runner;
pub mod scenario;

use std::path::Path;

use morita_core::{CheckRecord, Report};
use serde::Serialize;
use thiserror::Error;

pub use demos::generate_demo;
pub use runner::run;
pub use scenario::Scenario;

/// Malformed input; always exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unresolved reference to {0}")]
    UnresolvedReference(String),

    #[error("duplicate definition `{0}`")]
    Duplicate(String),

    #[error("invalid definition `{name}`: {source}")]
    Invalid {
        name: String,
        source: morita_core::Error,
    },

    #[error("unknown demo `{0}`")]
    UnknownDemo(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Scenario::from_json(&text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn run_scenario(path: &Path, tol: Option<f64>) -> Result<Report, CliError> {
    run(&load_scenario(path)?, tol)
}

#[derive(Serialize)]
struct MachineReport<'a> {
    overall: &'a str,
    records: &'a [CheckRecord],
}

/// The machine-readable report: `{"overall": "pass"|"fail", "records": [...]}`.
pub fn report_json(report: &Report) -> String {
    let doc = MachineReport {
        overall: if report.passed() { "pass" } else { "fail" },
        records: report.records(),
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}
