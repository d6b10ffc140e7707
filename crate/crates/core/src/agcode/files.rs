//! Code artifacts on disk: `<stem>.matrix.txt` (generator matrix text format),
//! `<stem>.json` (sidecar) and `<stem>.weights.csv` (`weight,count`).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::code::{LinearCode, ProvenanceSummary};
use crate::algebra::Matrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSidecar {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    pub field: FieldSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<ProvenanceSummary>,
}

impl CodeSidecar {
    pub fn new(code: &LinearCode, d: Option<usize>) -> Self {
        let f = code.field();
        CodeSidecar {
            n: code.n(),
            k: code.k(),
            d,
            field: FieldSpec {
                p: f.characteristic(),
                k: f.degree(),
            },
            provenance: code.provenance().map(|p| p.summary()),
        }
    }
}

pub fn weights_csv(dist: &[u64]) -> String {
    let mut out = String::from("weight,count\n");
    for (w, c) in dist.iter().enumerate() {
        out.push_str(&format!("{w},{c}\n"));
    }
    out
}

pub fn parse_weights_csv(text: &str) -> Result<Vec<u64>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("weight,count") {
        return Err(Error::Parse("missing 'weight,count' header".into()));
    }
    let mut out = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (w, c) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad weights line '{line}'")))?;
        let w: usize = w.trim().parse().map_err(|_| Error::Parse(format!("bad weight '{w}'")))?;
        let c: u64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad count '{c}'")))?;
        if w != out.len() {
            return Err(Error::Parse(format!("weights out of order at {w}")));
        }
        out.push(c);
    }
    Ok(out)
}

/// Writes the matrix, sidecar and (if given) weight distribution; returns
/// the paths written.
pub fn write_code_files(
    dir: &Path,
    stem: &str,
    code: &LinearCode,
    d: Option<usize>,
    weights: Option<&[u64]>,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let matrix = dir.join(format!("{stem}.matrix.txt"));
    fs::write(&matrix, code.generator().to_text())?;
    written.push(matrix);
    let sidecar = dir.join(format!("{stem}.json"));
    let json = serde_json::to_string_pretty(&CodeSidecar::new(code, d)).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(&sidecar, json + "\n")?;
    written.push(sidecar);
    if let Some(w) = weights {
        let csv = dir.join(format!("{stem}.weights.csv"));
        fs::write(&csv, weights_csv(w))?;
        written.push(csv);
    }
    Ok(written)
}

/// Reads back a matrix file and its sidecar (provenance is not rebuilt).
pub fn read_code_files(dir: &Path, stem: &str) -> Result<(LinearCode, CodeSidecar)> {
    let text = fs::read_to_string(dir.join(format!("{stem}.matrix.txt")))?;
    let code = LinearCode::row_space(&Matrix::parse_text(&text)?)?;
    let json = fs::read_to_string(dir.join(format!("{stem}.json")))?;
    let sidecar: CodeSidecar = serde_json::from_str(&json).map_err(|e| Error::Parse(e.to_string()))?;
    if sidecar.n != code.n() || sidecar.k != code.k() {
        return Err(Error::Parse("sidecar does not match the matrix".into()));
    }
    Ok((code, sidecar))
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::agcode::{build_ag_code, weight_distribution};
    use crate::algebra::{ElementOrder, Field};
    use crate::curve::{affine_places, Curve};
    use crate::rrspace::Divisor;

    #[test]
    fn round_trip() {
        let f = Field::prime(7).unwrap();
        let c = Curve::hyperelliptic(7).unwrap();
        let e = affine_places(c, f, ElementOrder::Lexicographic).unwrap();
        let code = build_ag_code(c, &Divisor::at_infinity(c, 5), &e, f).unwrap();
        let w = weight_distribution(&code).unwrap();
        let dir = std::env::temp_dir().join(format!("agcurve-files-{}", std::process::id()));
        write_code_files(&dir, "c735", &code, Some(5), Some(&w)).unwrap();
        let (back, side) = read_code_files(&dir, "c735").unwrap();
        assert_eq!(back.generator().rref().matrix, code.generator().rref().matrix);
        assert_eq!(side, CodeSidecar::new(&code, Some(5)));
        let csv = fs::read_to_string(dir.join("c735.weights.csv")).unwrap();
        assert_eq!(parse_weights_csv(&csv).unwrap(), w);
        fs::remove_dir_all(dir).unwrap();
    }
}
