//! Run manifests: every data file written by a command is listed in exactly
//! one sidecar manifest next to the primary output.

use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub model: String,
    /// SHA-256 of the model document (empty for model-free commands).
    pub model_sha256: String,
    /// Resolved parameters after defaulting, stringified.
    pub parameters: BTreeMap<String, String>,
    pub seeds: Vec<u64>,
    pub outputs: Vec<String>,
    /// Wall-clock duration; excluded from reproducibility comparisons.
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            model: String::new(),
            model_sha256: String::new(),
            parameters: BTreeMap::new(),
            seeds: Vec::new(),
            outputs: Vec::new(),
            duration_secs: 0.0,
        }
    }

    pub fn set_model(&mut self, name: &str, content: &str) {
        use sha2::{Digest, Sha256};
        self.model = name.to_string();
        self.model_sha256 = Sha256::digest(content.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes `<primary>.manifest.toml` and returns its path.
    pub fn write(&self, primary_output: &Path) -> std::io::Result<PathBuf> {
        let mut path = primary_output.as_os_str().to_owned();
        path.push(".manifest.toml");
        let path = PathBuf::from(path);
        let text = toml::to_string(self).expect("manifest serialization cannot fail");
        std::fs::write(&path, text)?;
        Ok(path)
    }
}
