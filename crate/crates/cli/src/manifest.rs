//! Run manifests and suite reports, serialized as versioned JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::write_atomic;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub actual: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
}

impl Assertion {
    /// `actual <= bound`.
    pub fn at_most(name: &str, actual: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: actual <= bound,
            actual: Some(actual),
            expected: None,
            tolerance: Some(bound),
            detail: None,
        }
    }

    /// `|actual - expected| <= tolerance`.
    pub fn within(name: &str, actual: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: (actual - expected).abs() <= tolerance,
            actual: Some(actual),
            expected: Some(expected),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    pub fn flag(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            actual: None,
            expected: None,
            tolerance: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    /// Named measurements not tied to a single assertion.
    pub measured: BTreeMap<String, f64>,
}

impl SuiteResult {
    pub fn new(name: &str, assertions: Vec<Assertion>) -> Self {
        Self {
            name: name.into(),
            passed: assertions.iter().all(|a| a.passed),
            assertions,
            measured: BTreeMap::new(),
        }
    }

    pub fn measure(mut self, key: &str, value: f64) -> Self {
        self.measured.insert(key.into(), value);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: String,
    /// Arguments after the program name, as given.
    pub argv: Vec<String>,
    pub schedule: Option<String>,
    pub bits: u32,
    pub n: Option<usize>,
    pub seed: u64,
    /// Output kind (`csv`, `svg`) to path.
    pub outputs: BTreeMap<String, String>,
    pub suites: Vec<SuiteResult>,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String], bits: u32, seed: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            argv: argv.to_vec(),
            schedule: None,
            bits,
            n: None,
            seed,
            outputs: BTreeMap::new(),
            suites: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, self.to_json().as_bytes())
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: Self =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed manifest {}: {e}", path.display())))?;
        if manifest.schema != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "manifest schema {} is not supported (expected {SCHEMA_VERSION})",
                manifest.schema
            )));
        }
        Ok(manifest)
    }
}
