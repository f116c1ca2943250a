use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::files::InputRef;
use crate::error::{Error, Result};
use crate::verdict::Status;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The outcome of one command, as written by `--json` and read by `replay`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Subcommand path, e.g. `check perm`.
    pub command: String,
    /// The parsed invocation with absolute paths.
    pub args: Value,
    pub input: Vec<InputRef>,
    pub status: Status,
    pub witness: Option<Value>,
    /// The witness with element labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_display: Option<String>,
    /// Constructed objects: terms found, reflections, cube sizes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub message: String,
    pub budget: Budget,
    pub assumptions: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("report: {e}")))
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let files: Vec<&str> = self
            .input
            .iter()
            .map(|i| i.path.rsplit('/').next().unwrap_or(&i.path))
            .collect();
        let _ = writeln!(out, "{} [{}]: {}", self.command, files.join(", "), self.status.as_str());
        let _ = writeln!(out, "  {}", self.message);
        if let Some(w) = &self.witness_display {
            let _ = writeln!(out, "  witness: {w}");
        }
        if let Some(n) = &self.budget.note {
            let _ = writeln!(out, "  budget: {n}");
        }
        for a in &self.assumptions {
            let _ = writeln!(out, "  assuming: {a}");
        }
        out
    }
}
