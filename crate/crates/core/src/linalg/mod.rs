//! Exact rational linear algebra.
//!
//! Everything here is arbitrary precision. Verdicts downstream compare
//! integers produced from these values, so no floating point is involved
//! anywhere.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{rref, QMatrix};
pub use rational::{format_rational, parse_rational, Rational};
pub use subspace::{restrict_to_subspace, subspace_equal, Subspace};
