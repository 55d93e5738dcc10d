//! Exact arithmetic foundation.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod quadext;
pub mod rational;
pub mod resring;
pub mod resultant;
pub mod upoly;

pub use field::Field;
pub use matrix::{smith_normal_form, IntMatrix};
pub use poly::{MultiPoly, Poly, PolyError};
pub use quadext::QuadExt;
pub use rational::Rational;
pub use resultant::resultant;
pub use upoly::UniPoly;

/// Square-free part of a univariate polynomial given as a `MultiPoly`.
pub fn squarefree_part(f: &Poly) -> Result<Poly, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.degree_in(i).unwrap_or(0) > 0).collect();
    if used.len() > 1 {
        return Err(PolyError::NotUnivariate);
    }
    let i = used.first().copied().unwrap_or(0);
    let u = f.to_upoly(i)?;
    let names: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    Ok(Poly::from_upoly(&names, i, &u.squarefree_part()))
}
