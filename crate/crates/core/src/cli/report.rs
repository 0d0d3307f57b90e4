use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::instance::InstanceFile;
use crate::theorems::{Status, Verdict};

/// JSON Schema the `--format json` output conforms to.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub digest: String,
    pub characteristic: u64,
    pub verdicts: Vec<Verdict>,
}

/// SHA-256 of the canonical rendering, so formatting and comments don't matter.
pub fn digest(file: &InstanceFile) -> String {
    hex::encode(Sha256::digest(file.to_string().as_bytes()))
}

impl Report {
    pub fn new(file: &InstanceFile, verdicts: Vec<Verdict>) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            digest: digest(file),
            characteristic: file.ring.field().characteristic(),
            verdicts,
        }
    }

    /// 0 when nothing fails, 1 on a failing check, 3 when a resource cap was hit.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.resource_limited) {
            3
        } else if self.verdicts.iter().any(|v| v.status == Status::Fails) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let count = |st: Status| self.verdicts.iter().filter(|v| v.status == st).count();
        let _ = writeln!(s, "# linkcheck report\n");
        let _ = writeln!(s, "- version: {}", self.version);
        let _ = writeln!(s, "- digest: `{}`", self.digest);
        let _ = writeln!(s, "- characteristic: {}", self.characteristic);
        let _ = writeln!(
            s,
            "- verdicts: {} holds, {} fails, {} inapplicable",
            count(Status::Holds),
            count(Status::Fails),
            count(Status::Inapplicable)
        );
        for (k, v) in self.verdicts.iter().enumerate() {
            let _ = writeln!(s, "\n## {}. {} — {}\n", k + 1, v.check, v.status);
            let _ = writeln!(s, "| key | value |\n|---|---|");
            for (key, val) in &v.details {
                let _ = writeln!(s, "| {key} | {} |", cell(val));
            }
            if let Some(w) = &v.witness {
                let _ = writeln!(s, "\nwitness:\n\n```json\n{}\n```", serde_json::to_string_pretty(w).unwrap_or_default());
            }
            let _ = writeln!(s, "\n_{} ms_", v.millis);
        }
        s
    }
}

fn cell(v: &Value) -> String {
    let text = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    text.replace('|', "\\|")
}
