//! Machine-readable run reports shared by the library checks and the CLI.
//!
//! The JSON schema is stable:
//! `{"command", "params": {"T", "G", "n", "m"}, "results": [{"name", "value",
//! "status", "detail"}], "version"}`. Exact values are rendered as fraction
//! strings, never floats.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: ReportParams,
    pub results: Vec<CheckResult>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Ok,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub value: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    pub fn ok(name: impl Into<String>, value: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), value: value.into(), status: CheckStatus::Ok, detail: detail.into() }
    }

    pub fn fail(
        name: impl Into<String>,
        value: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            value: value.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
        }
    }

    pub fn info(
        name: impl Into<String>,
        value: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            value: value.into(),
            status: CheckStatus::Info,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }
}
