//! On-disk instance and report formats.
//!
//! Both are JSON documents with a fixed key order (struct declaration order), written
//! pretty-printed with a trailing newline. Reals use the shortest representation that
//! parses back to the same `f64`, so files round-trip exactly.

use std::io::Write;
use std::path::Path;

use persub_core::generate::GenParams;
use persub_core::oracle::OracleResult;
use persub_core::{Instance, SolveReport, SubmodularFunction};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub functions: Vec<SubmodularFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// How a generated instance was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub generator: String,
    pub family: String,
    pub seed: u64,
    pub params: GenParams,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            schema_version: INSTANCE_SCHEMA_VERSION,
            n: inst.n(),
            k: inst.requested_k(),
            m: inst.m(),
            functions: inst.functions().to_vec(),
            item_labels: None,
            function_labels: None,
            provenance: None,
        }
    }

    /// Checks everything the schema promises beyond the JSON shape.
    pub fn validate(&self) -> std::result::Result<Instance, String> {
        if self.schema_version != INSTANCE_SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {INSTANCE_SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.m != self.functions.len() {
            return Err(format!(
                "m = {} but {} functions are listed",
                self.m,
                self.functions.len()
            ));
        }
        if let Some(labels) = &self.item_labels {
            if labels.len() != self.n {
                return Err(format!("{} item labels for n = {}", labels.len(), self.n));
            }
        }
        if let Some(labels) = &self.function_labels {
            if labels.len() != self.m {
                return Err(format!(
                    "{} function labels for m = {}",
                    labels.len(),
                    self.m
                ));
            }
        }
        Instance::new(self.n, self.k, self.functions.clone()).map_err(|e| e.to_string())
    }

    pub fn parse(text: &str, origin: &Path) -> Result<(Self, Instance)> {
        let parse_err = |message: String| CliError::Parse {
            path: origin.to_path_buf(),
            message,
        };
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let inst = file.validate().map_err(parse_err)?;
        Ok((file, inst))
    }

    pub fn load(path: &Path) -> Result<(Self, Instance)> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    pub fn to_text(&self) -> String {
        to_canonical_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub algorithm: String,
    pub inner: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub families: Vec<String>,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        InstanceSummary {
            n: inst.n(),
            k: inst.k(),
            m: inst.m(),
            families: inst
                .functions()
                .iter()
                .map(|f| f.family().to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Oracle comparison attached by `compare`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleBlock {
    pub opt0: OracleResult,
    pub opt1: OracleResult,
    /// Best `l`-candidate value, for the multi-candidate solver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_l: Option<OracleResult>,
    /// The optimum the solver competes against: `OPT_l` for multi, `OPT₀` otherwise.
    pub reference_opt: f64,
    /// `objective / reference_opt`; absent when the optimum is zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt1_over_opt0: Option<f64>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub solve_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub solver: SolverConfig,
    pub instance: InstanceSummary,
    pub report: SolveReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ReportFile {
    pub fn to_text(&self) -> String {
        to_canonical_json(self)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.oracle
            .iter()
            .flat_map(|o| o.checks.iter())
            .filter(|c| !c.passed)
            .collect()
    }
}

fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize infallibly");
    text.push('\n');
    text
}

/// Writes `text` to `path` through a temporary file in the same directory, so a failed
/// run never leaves a partial file behind.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(text.as_bytes()).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}
