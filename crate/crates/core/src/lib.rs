//! Exact computations with Riemann-Roch spaces on the projective line and on
//! the hyperelliptic curves `y^2 = x^p - x`, the representations of curve
//! automorphism groups on those spaces, the algebraic-geometry codes they
//! define, and permutation decoding of those codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: GF(p) and GF(p²) arithmetic, polynomials, truncated power
//!   series and dense matrices.
//! - [`perm`]: permutations of `{0..n}` and small permutation groups.
//! - [`curve`]: places, the automorphisms γ₁…γ₄, group closure, orbits.
//! - [`rrspace`]: divisors, rational functions, valuations and bases of L(D).
//! - [`rep`]: matrices of the action of a group on L(D).
//! - [`agcode`]: evaluation codes, minimum distance, code automorphisms.
//! - [`permdec`]: systematic form, PD-sets and permutation decoding.
//! - [`suites`]: named reproduction suites used by the command-line tool.

pub mod agcode;
pub mod algebra;
pub mod curve;
pub mod perm;
pub mod permdec;
pub mod rep;
pub mod rrspace;
pub mod suites;

use thiserror::Error;

/// Default cap on the number of codewords an exhaustive enumeration may visit.
pub const DEFAULT_CODEWORD_CAP: u64 = 100_000_000;

/// Default cap on the size of a group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

/// Environment variable that overrides [`DEFAULT_CODEWORD_CAP`].
pub const CODEWORD_CAP_ENV: &str = "AGCURVE_CAP_CODEWORDS";

/// Returns the codeword enumeration cap, honouring [`CODEWORD_CAP_ENV`].
pub fn codeword_cap() -> u64 {
    std::env::var(CODEWORD_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CODEWORD_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of multiplicative order {order} in a field of size {size}")]
    NoSuchOrder { order: u64, size: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("place {0} is not on the curve")]
    NotOnCurve(String),
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("group is not faithful: expected order {expected}, found {found}")]
    NotFaithful { expected: usize, found: usize },
    #[error("permutation does not preserve the place set: {0}")]
    NotAPermutation(String),
    #[error("zero function has no valuation")]
    ZeroFunction,
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),
    #[error("divisor is not stable under {0}")]
    NotStable(String),
    #[error("function is not in the span of the basis")]
    NotInSpan,
    #[error("invalid code construction: {0}")]
    InvalidCode(String),
    #[error("permutation is not a code automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
