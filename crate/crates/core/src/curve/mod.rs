//! Places of P¹ and of `y² = x^p − x`, their automorphisms, and the groups
//! those generate.

pub mod automorphism;
pub mod group;
pub mod place;

pub use automorphism::{standard_generators, AutMap, Generator};
pub use group::{induced_perm, AutGroup, GroupReport};
pub use place::{affine_places, enumerate_places, Curve, Place, PlaceSet};
