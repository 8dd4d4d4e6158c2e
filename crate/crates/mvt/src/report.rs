//! Versioned, deterministic run reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "mvt-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every check passed.
    Pass,
    /// A theorem check failed; the report carries the evidence.
    Fail,
    /// Bad input or an exhausted budget.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub version: &'static str,
    pub inputs_digest: String,
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    pub status: Status,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// SHA-256 over the command name and the `(name, source)` pairs of its inputs.
pub fn inputs_digest(command: &str, inputs: &[(String, String)]) -> String {
    let canonical = serde_json::to_vec(&(command, inputs)).expect("strings serialize");
    hex::encode(Sha256::digest(canonical))
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}\nstatus: {}\nseed: {}  budget: {}  samples: {}\ninputs: {}\n",
            self.command,
            self.version,
            serde_json::to_value(self.status)
                .expect("status")
                .as_str()
                .unwrap_or_default(),
            self.seed,
            self.budget,
            self.samples,
            self.inputs_digest
        );
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if !self.results.is_null() {
            flatten("", &self.results, &mut out);
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
