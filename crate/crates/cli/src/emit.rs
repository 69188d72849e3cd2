//! Output plumbing: pinned float formatting, data emission, and the run
//! manifest written alongside file output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// 17 significant digits, '.' decimal, locale-free: enough to round-trip
/// any f64 bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Record of one run: command, full resolved parameter set, and a
/// checksum of the data bytes. Re-running with the manifest as --config
/// reproduces the data byte for byte.
#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    params: &'a BTreeMap<String, serde_json::Value>,
    seed: u64,
    version: &'a str,
    output_sha256: String,
}

pub struct Emitter {
    command: &'static str,
    params: BTreeMap<String, serde_json::Value>,
}

impl Emitter {
    pub fn new(command: &'static str) -> Self {
        Emitter {
            command,
            params: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    /// Prints to stdout, or writes `out` plus `<out>.manifest.json`.
    pub fn finish(self, out: Option<&Path>, data: &str) -> anyhow::Result<()> {
        match out {
            None => {
                print!("{data}");
                Ok(())
            }
            Some(path) => {
                std::fs::write(path, data)?;
                let digest = Sha256::digest(data.as_bytes());
                let checksum: String = digest.iter().map(|b| format!("{b:02x}")).collect();
                let seed = self
                    .params
                    .get("seed")
                    .and_then(serde_json::Value::as_u64)
                    .unwrap_or(0);
                let manifest = Manifest {
                    command: self.command,
                    params: &self.params,
                    seed,
                    version: env!("CARGO_PKG_VERSION"),
                    output_sha256: checksum,
                };
                let mut name = path.file_name().unwrap_or_default().to_os_string();
                name.push(".manifest.json");
                let manifest_path = path.with_file_name(name);
                std::fs::write(
                    manifest_path,
                    serde_json::to_string_pretty(&manifest)? + "\n",
                )?;
                Ok(())
            }
        }
    }
}
