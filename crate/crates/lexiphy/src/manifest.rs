use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TOOL: &str = "lexiphy";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A written file and the FNV-1a hash of its bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    pub path: PathBuf,
    pub fnv1a: String,
}

/// Everything needed to rerun a subcommand.
///
/// `args` is the full argument list after the program name; replaying it
/// reproduces every file in `outputs` byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub args: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<OutputFile>,
    pub wall_time_secs: f64,
}

impl RunManifest {
    pub fn new(subcommand: &str, args: &[String], seed: u64) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            subcommand: subcommand.into(),
            args: args.to_vec(),
            params: BTreeMap::new(),
            seed,
            inputs: Vec::new(),
            outputs: Vec::new(),
            wall_time_secs: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn input(&mut self, path: &Path) -> &mut Self {
        self.inputs.push(path.to_path_buf());
        self
    }

    /// Record an output that has already been written.
    pub fn output(&mut self, path: &Path) -> Result<&mut Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        self.outputs.push(OutputFile {
            path: path.to_path_buf(),
            fnv1a: format!("{:016x}", fnv1a(&bytes)),
        });
        Ok(self)
    }

    pub fn path_for(prefix: &str, subcommand: &str) -> PathBuf {
        PathBuf::from(format!("{prefix}.{subcommand}.manifest.json"))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        crate::formats::write_text(path, &text)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = crate::formats::read_text(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Outputs whose current bytes differ from the recorded hash.
    pub fn changed_outputs(&self) -> Result<Vec<PathBuf>> {
        let mut changed = Vec::new();
        for out in &self.outputs {
            let bytes = std::fs::read(&out.path).map_err(|e| Error::io(&out.path, e))?;
            if format!("{:016x}", fnv1a(&bytes)) != out.fnv1a {
                changed.push(out.path.clone());
            }
        }
        Ok(changed)
    }
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
