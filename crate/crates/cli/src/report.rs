//! Report envelope and the small serializable views used by every command.

use serde::Serialize;
use sha2::{Digest, Sha256};

use fusible::SubsetMask;

pub const TOOL: &str = "fusible";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field order here is the field order on the wire.
#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_digest: String,
    pub result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, input: &[u8], result: T) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command,
            input_digest: digest_hex(input),
            result,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A set of element indices with their display names.
#[derive(Debug, Clone, Serialize)]
pub struct ElementSet {
    pub elements: Vec<usize>,
    pub names: Vec<String>,
}

impl ElementSet {
    pub fn new(mask: &SubsetMask, names: &[String]) -> Self {
        let elements = mask.to_vec();
        ElementSet {
            names: elements.iter().map(|&e| names[e].clone()).collect(),
            elements,
        }
    }
}
