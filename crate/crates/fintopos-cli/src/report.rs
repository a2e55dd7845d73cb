//! Deterministic report assembly and rendering.
//!
//! JSON output keeps a fixed field order for the report itself and sorted
//! keys inside `values`, so identical inputs always produce identical
//! bytes.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use fintopos_core::check::{Check, CheckStatus};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub version: String,
    pub checks: Vec<CheckRow>,
    pub values: Map<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<Check> for CheckRow {
    fn from(c: Check) -> Self {
        CheckRow {
            name: c.name,
            status: match c.status {
                CheckStatus::Pass => "pass".into(),
                CheckStatus::Fail => "fail".into(),
                CheckStatus::Refused => "refused".into(),
            },
            witness: c.witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Report {
    pub fn new(command: &str, digest: &str, checks: Vec<Check>, values: Map<String, Value>) -> Self {
        Report {
            command: command.into(),
            input_digest: digest.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            checks: checks.into_iter().map(CheckRow::from).collect(),
            values,
        }
    }

    /// 0 if everything passed, 1 on any failure, 2 on refusals without
    /// failures.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == "fail") {
            1
        } else if self.checks.iter().any(|c| c.status == "refused") {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input:   sha256:{}\n", self.input_digest));
        out.push_str(&format!("version: {}\n", self.version));
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let tag = match c.status.as_str() {
                    "pass" => "PASS   ",
                    "fail" => "FAIL   ",
                    _ => "REFUSED",
                };
                match &c.witness {
                    Some(w) => out.push_str(&format!("  {tag} {} ({w})\n", c.name)),
                    None => out.push_str(&format!("  {tag} {}\n", c.name)),
                }
            }
        }
        if !self.values.is_empty() {
            out.push_str("values:\n");
            for (k, v) in &self.values {
                out.push_str(&format!("  {k} = {v}\n"));
            }
        }
        out
    }
}

/// Hex SHA-256 of the raw input bytes, file after file.
pub fn input_digest<S: AsRef<[u8]>>(sources: &[S]) -> String {
    let mut hasher = Sha256::new();
    for s in sources {
        hasher.update(s.as_ref());
    }
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}
