//! Machine-readable run reports with stable field names.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: serde_json::Value,
    pub timing_ms: u128,
    pub lines: Vec<String>,
    pub pass: bool,
}

impl RunReport {
    pub fn digest_bytes(name: &str, bytes: &[u8]) -> InputDigest {
        let mut h = Sha256::new();
        h.update(bytes);
        let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        InputDigest { name: name.to_string(), sha256: hex }
    }

    pub fn print(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}
