//! Serialisable command outputs. Every JSON output parses back into these
//! types.

use agcurve::permdec::{PdReport, PdVerification};
use agcurve::suites::{Check, ConjectureReport};
use serde::{Deserialize, Serialize};

use crate::args::{Format, GroupChoice, Order};

/// The fully resolved configuration of a run, echoed in every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub action: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ext: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Order>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<GroupChoice>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub received: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub suites: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<u64>,
    pub seed: u64,
    pub format: Format,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<String>,
    pub cap_codewords: u64,
    pub cap_closure: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveOutput {
    pub config: RunConfig,
    pub field: String,
    pub genus: u32,
    pub places: usize,
    pub group_order: usize,
    pub generators: Vec<String>,
    pub orbits: Vec<usize>,
    pub stabilizers: Vec<usize>,
    pub orbit_representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeOutput {
    pub config: RunConfig,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub mds: bool,
    pub injective: bool,
    pub places: Vec<String>,
    pub standard_form: Vec<Vec<String>>,
    /// Standard-form column `j` is original column `columns[j]` (1-based).
    pub columns: Vec<usize>,
    pub weights: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdsetOutput {
    pub config: RunConfig,
    pub code: [usize; 3],
    pub group_order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<PdReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<PdVerification>,
    pub uncovered: usize,
    /// A support (1-based) no candidate moves off the information positions.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub example_uncovered: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeOutput {
    pub config: RunConfig,
    pub received: Vec<String>,
    pub decoded: Option<Vec<String>>,
    pub tried: usize,
    /// Word of the permutation that succeeded; `1` for the identity.
    pub used: Option<String>,
    pub beyond_guarantee: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub suites: Vec<String>,
    pub checks: usize,
    pub failed: usize,
}

/// One line of `verify` JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerifyLine {
    Config { config: RunConfig },
    Summary { summary: VerifySummary },
    Check(Check),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutput {
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<ConjectureReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
}

/// Parses the JSON-lines output of `verify`.
pub fn parse_verify_lines(text: &str) -> serde_json::Result<Vec<VerifyLine>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}
