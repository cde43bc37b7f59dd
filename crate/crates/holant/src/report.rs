//! Deterministic run reports for the CLI: command, input digests, backend,
//! seed, and the verdict/certificate. Identical inputs and seed reproduce the
//! report byte-for-byte on the exact backend; wall-clock timing is attached
//! only on request so the default report stays deterministic.

use crate::scalar::Backend;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path) -> std::io::Result<Self> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        Ok(InputDigest {
            path: path.display().to_string(),
            sha256: hex_string(&digest),
        })
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, backend: Backend) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            backend,
            seed: None,
            verdict: serde_json::Value::Null,
            timing_ms: None,
        }
    }

    pub fn with_input(mut self, path: &Path) -> std::io::Result<Self> {
        self.inputs.push(InputDigest::of(path)?);
        Ok(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let dir = std::env::temp_dir().join("holant-report-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("input.json");
        std::fs::write(&path, b"{}").unwrap();
        let a = InputDigest::of(&path).unwrap();
        let b = InputDigest::of(&path).unwrap();
        assert_eq!(a.sha256, b.sha256);
        assert_eq!(a.sha256.len(), 64);
    }

    #[test]
    fn report_without_timing_is_deterministic() {
        let mut r1 = RunReport::new("eval", Backend::Exact);
        r1.verdict = serde_json::json!({"value": "5"});
        let mut r2 = RunReport::new("eval", Backend::Exact);
        r2.verdict = serde_json::json!({"value": "5"});
        assert_eq!(r1.to_json_string(), r2.to_json_string());
    }
}
