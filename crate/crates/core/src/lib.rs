//! Exact construction and certification of marked plane sextics, their
//! double-cover lattices, higher Chow cycle certificates and degenerations.

pub mod curves;
pub mod cycles;
pub mod degen;
pub mod exactmath;
pub mod families;
pub mod lattice;

pub use exactmath::{IntMatrix, MultiPoly, QuadExt, Rational, UniPoly};

/// Polynomials over ℚ.
pub type QPoly = exactmath::MultiPoly<Rational>;
/// Polynomials over a quadratic field.
pub type QuadPoly = exactmath::MultiPoly<QuadExt>;
