//! Divisors, rational functions and Riemann–Roch bases.

pub mod basis;
pub mod divisor;
pub mod function;

pub use basis::{basis_general, basis_one_point, basis_p1, ell, one_point_exponents, separates_points, RRBasis};
pub use divisor::Divisor;
pub use function::{rhs_poly, LocalCoords, RationalFunction};
