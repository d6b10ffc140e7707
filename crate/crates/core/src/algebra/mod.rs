//! Finite fields, polynomials, truncated power series and dense matrices.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod series;

pub use field::{ElementOrder, Field, FieldElement};
pub use matrix::{Matrix, Rref, Solution};
pub use poly::Poly;
pub use series::TruncatedSeries;
