//! The run manifest: what was run, with which parameters, what was observed,
//! and a checksum of every file written.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    /// Path relative to the output directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub degree: Option<u32>,
    pub prime: Option<u32>,
    pub mode: Option<String>,
    /// Normalization applied to each invariant, by name.
    pub pins: BTreeMap<String, String>,
    /// Observed ranks, by stage.
    pub ranks: BTreeMap<String, Vec<usize>>,
    /// Observed dimensions and counts, by name.
    pub dimensions: BTreeMap<String, u64>,
    pub outputs: Vec<OutputFile>,
    pub elapsed_seconds: f64,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects outputs while a command runs and writes `manifest.json` last.
pub struct ManifestWriter {
    dir: PathBuf,
    started: Instant,
    pub manifest: RunManifest,
}

impl ManifestWriter {
    pub fn new(dir: &Path, command: &str) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(ManifestWriter {
            dir: dir.to_path_buf(),
            started: Instant::now(),
            manifest: RunManifest {
                command: command.into(),
                version: env!("CARGO_PKG_VERSION").into(),
                ..RunManifest::default()
            },
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes `contents` to `name` inside the output directory and records it.
    pub fn write(&mut self, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents)?;
        self.manifest.outputs.push(OutputFile {
            path: name.into(),
            bytes: contents.len() as u64,
            sha256: sha256_hex(contents.as_bytes()),
        });
        Ok(path)
    }

    pub fn finish(mut self) -> std::io::Result<RunManifest> {
        self.manifest.elapsed_seconds = self.started.elapsed().as_secs_f64();
        let json = serde_json::to_string_pretty(&self.manifest).map_err(std::io::Error::other)?;
        std::fs::write(self.dir.join("manifest.json"), json + "\n")?;
        Ok(self.manifest)
    }
}

pub fn read_manifest(path: &Path) -> anyhow::Result<RunManifest> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}
