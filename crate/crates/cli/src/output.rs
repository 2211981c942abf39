//! Machine-readable records: one JSON object per line.
//!
//! Every record has `command`, `params` and `result`. Randomized commands add
//! `provenance` (prime, base seed, trial budget); `--timing` adds `wall_ms`.
//! Integers that can exceed 64 bits (δ, δ₋) are written as decimal strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub p: u32,
    pub seed: u64,
    pub trials: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Value,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str, params: Value, result: Value) -> Self {
        OutputRecord {
            command: command.to_string(),
            params,
            result,
            provenance: None,
            wall_ms: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records contain only JSON-safe values")
    }
}

/// Left-aligned two-column table.
pub fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
