//! The scalar abstraction used by polynomials and linear algebra.
//!
//! Anything that behaves like an exact field containing the rationals
//! qualifies; the blanket impl below picks up `Rational` and `QuadExt`.

use super::rational::Rational;
use num_traits::Num;
use std::fmt::Debug;
use std::ops::Neg;

pub trait Field: Num + Clone + Debug + Neg<Output = Self> + From<Rational> + Send + Sync {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for T where T: Num + Clone + Debug + Neg<Output = T> + From<Rational> + Send + Sync {}
