use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Failure {
    /// Unreadable or malformed input, or an invalid option.
    #[error("{0}")]
    Input(String),
    /// A verification or equivalence check failed.
    #[error("{0}")]
    Semantic(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 3,
            Failure::Semantic(_) => 2,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

#[derive(Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Input path to SHA-256 digest.
    pub inputs: BTreeMap<String, String>,
    pub params: BTreeMap<String, String>,
    pub outcome: String,
    pub duration_ms: u128,
}

impl RunManifest {
    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn finish(&mut self, result: &Result<(), Failure>, elapsed: Duration) {
        if self.outcome.is_empty() || result.is_err() {
            self.outcome = match result {
                Ok(()) => "ok".to_string(),
                Err(f) => format!("exit {}: {f}", f.exit_code()),
            };
        }
        self.duration_ms = elapsed.as_millis();
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads a file and records its digest in the manifest.
pub fn read_input(path: &Path, manifest: &mut RunManifest) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    manifest.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
    String::from_utf8(bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
