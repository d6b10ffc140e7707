//! Trace codes `Tr(C)` of GF(p²) codes.

use super::code::LinearCode;
use crate::algebra::{FieldElement, Matrix};
use crate::{Error, Result};

/// `{(Tr c_1, …, Tr c_n) : c ∈ C}` over GF(p), as the GF(p)-row space of the
/// traced generator rows and their `u`-multiples.
pub fn trace_code(code: &LinearCode) -> Result<LinearCode> {
    let field = code.field();
    let u = field
        .u()
        .ok_or_else(|| Error::InvalidField("trace code needs a GF(p²) code".into()))?;
    let base = field.prime_subfield();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for i in 0..code.k() {
        let row = code.generator().row(i);
        rows.push(row.iter().map(|a| a.trace()).collect());
        rows.push(row.iter().map(|&a| (a * u).trace()).collect());
    }
    if rows.is_empty() {
        return LinearCode::row_space(&Matrix::zeros(base, 1, code.n()));
    }
    LinearCode::row_space(&Matrix::from_rows(base, rows)?)
}
