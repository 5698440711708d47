//! Run manifests: every command writes exactly one `manifest.json` next to
//! its outputs, echoing the resolved parameters and the SHA-256 of each
//! artifact so a rerun can be verified byte for byte. Nothing
//! time-dependent goes in here; identical flags and seed give an identical
//! manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Resolved parameters, keyed by flag name. BTreeMap keeps the
    /// serialization order stable.
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub outputs: Vec<OutputRecord>,
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes =
        fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(hex::encode(hasher.finalize()))
}

/// Hash the named files (paths relative to `out_dir`, recorded in the given
/// order) and write `manifest.json` into `out_dir`.
pub fn write_manifest(
    out_dir: &Path,
    command: &str,
    params: BTreeMap<String, String>,
    seed: Option<u64>,
    output_files: &[&str],
) -> Result<(), CliError> {
    let mut outputs = Vec::with_capacity(output_files.len());
    for name in output_files {
        outputs.push(OutputRecord {
            path: (*name).to_string(),
            sha256: sha256_file(&out_dir.join(name))?,
        });
    }
    let manifest = RunManifest {
        command: command.to_string(),
        params,
        seed,
        outputs,
    };
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Data(format!("manifest serialization: {e}")))?;
    let path = out_dir.join(MANIFEST_FILE);
    fs::write(&path, json + "\n").map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}
