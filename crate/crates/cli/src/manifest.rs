use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Provenance block embedded in every JSON output. Contains nothing that varies between
/// identical runs, so equal inputs and configuration give byte-identical files.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_sha256: Option<String>,
    pub config: Value,
    pub version: String,
    /// Variable order by decreasing `ρ_j`, when the command computes one.
    pub permutation: Option<Vec<usize>>,
    /// Side files written by the run (diagrams, CSV).
    pub outputs: Vec<String>,
}

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub manifest: &'a RunManifest,
    pub result: &'a Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn render(manifest: &RunManifest, result: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { manifest, result }).expect("json output");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn render_is_stable() {
        let m = RunManifest {
            command: "rho".into(),
            input_sha256: None,
            config: serde_json::json!({"b": 1, "a": 2}),
            version: "0".into(),
            permutation: Some(vec![1, 0]),
            outputs: vec![],
        };
        let v = serde_json::json!([1, 2]);
        assert_eq!(render(&m, &v), render(&m, &v));
        assert!(render(&m, &v).ends_with("}\n"));
    }
}
