//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "agcurve", version, about = "AG codes on y² = x^p − x: places, automorphisms, codes, permutation decoding")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Directory for artifacts (code files, reports).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel kernels.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    /// Seed for every pseudorandom choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// 0, 1, g, g², … for the smallest primitive root g.
    Power,
    /// Coefficient index c0 + c1·p.
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupChoice {
    /// Image of the stabilizer of ∞ in the curve's automorphism group.
    Curve,
    /// x ↦ ax + b on the affine points (GF(p) codes only).
    Affine,
    /// Every coordinate permutation preserving the code (n ≤ 8).
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational places, automorphism group and orbits of y² = x^p − x.
    Curve {
        #[arg(short)]
        p: u32,
        /// Degree of the field extension (1 or 2).
        #[arg(long, default_value_t = 2)]
        ext: u8,
    },
    /// One-point code C(m·P∞, affine points).
    Code(CodeArgs),
    /// Run named reproduction suites.
    Verify {
        /// Suite names; none runs no checks.
        suites: Vec<String>,
        #[arg(short)]
        p: Option<u32>,
        /// Trials per weight for channel experiments.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Fixed-p permutation-decoding experiment with the curve's group.
    Experiment {
        #[arg(short)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        ext: u8,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(short)]
    pub p: u32,
    #[arg(short)]
    pub m: i64,
    #[arg(long, default_value_t = 1)]
    pub ext: u8,
    /// Order of the field elements, which fixes the order of E.
    #[arg(long, value_enum, default_value_t = Order::Power)]
    pub order: Order,
    #[command(subcommand)]
    pub action: Option<CodeAction>,
}

#[derive(Debug, Subcommand)]
pub enum CodeAction {
    /// Search, verify and exercise a PD-set.
    Pdset {
        #[arg(short)]
        w: usize,
        /// Candidate permutation group (default: affine over GF(p), curve otherwise).
        #[arg(long, value_enum)]
        group: Option<GroupChoice>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Permutation-decode a received word.
    Decode {
        /// Comma-separated field elements, e.g. "1,0,3" or "2+u,0,1".
        #[arg(long)]
        received: String,
        /// PD-set weight; defaults to t.
        #[arg(short)]
        w: Option<usize>,
        #[arg(long, value_enum)]
        group: Option<GroupChoice>,
    },
}

/// Accepts the single-dash long form `-ext` as `--ext`.
pub fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    args.into_iter()
        .map(|a| {
            if a == "-ext" {
                "--ext".to_string()
            } else if let Some(v) = a.strip_prefix("-ext=") {
                format!("--ext={v}")
            } else {
                a
            }
        })
        .collect()
}
