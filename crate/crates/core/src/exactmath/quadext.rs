//! Elements a + b√d of a quadratic field ℚ(√d).

use super::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

/// `d == 0` marks an element with `b == 0` that carries no radicand yet;
/// such elements mix freely with any ℚ(√d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadExt {
    /// `d` must be square-free; d = 1 folds into the rational part.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        if d.is_one() {
            return QuadExt { a: a + b, b: Rational::zero(), d: BigInt::zero() };
        }
        assert!(!d.is_zero() || b.is_zero(), "radicand 0 with nonzero b");
        QuadExt { a, b, d }.normalized()
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: BigInt::zero() }
    }

    /// √x for a rational x, written as c√d with d square-free.
    pub fn sqrt_of(x: &Rational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let (d, c) = rational::rational_squarefree(x);
        QuadExt::new(Rational::zero(), c, d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    /// Radicand, or `None` if the element is rational.
    pub fn d(&self) -> Option<&BigInt> {
        if self.b.is_zero() {
            None
        } else {
            Some(&self.d)
        }
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// a² − d b²
    pub fn norm(&self) -> Rational {
        if self.b.is_zero() {
            return self.a.clone() * self.a.clone();
        }
        self.a.clone() * self.a.clone() - Rational::from_integer(self.d.clone()) * self.b.clone() * self.b.clone()
    }

    pub fn trace(&self) -> Rational {
        self.a.clone() + self.a.clone()
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = BigInt::zero();
        }
        self
    }

    fn common_d(x: &Self, y: &Self) -> BigInt {
        match (x.b.is_zero(), y.b.is_zero()) {
            (true, true) => BigInt::zero(),
            (false, true) => x.d.clone(),
            (true, false) => y.d.clone(),
            (false, false) => {
                assert_eq!(x.d, y.d, "mixing ℚ(√{}) and ℚ(√{})", x.d, y.d);
                x.d.clone()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": rational::to_string(&self.a),
            "b": rational::to_string(&self.b),
            "d": self.d.to_string(),
        })
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::rational(a)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        let d = Self::common_d(&self, &o);
        QuadExt { a: self.a + o.a, b: self.b + o.b, d }.normalized()
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        let d = Self::common_d(&self, &o);
        QuadExt { a: self.a - o.a, b: self.b - o.b, d }.normalized()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        let d = Self::common_d(&self, &o);
        let dq = Rational::from_integer(d.clone());
        let a = self.a.clone() * o.a.clone() + dq * self.b.clone() * o.b.clone();
        let b = self.a * o.b + self.b * o.a;
        QuadExt { a, b, d }.normalized()
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QuadExt) -> QuadExt {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in quadratic field");
        let c = o.conj();
        let p = self * c;
        QuadExt { a: p.a / n.clone(), b: p.b / n, d: p.d }.normalized()
    }
}

impl Rem for QuadExt {
    type Output = QuadExt;
    fn rem(self, _o: QuadExt) -> QuadExt {
        QuadExt::zero()
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Num for QuadExt {
    type FromStrRadixErr = rational::ParseRationalError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(rational::ParseRationalError(s.to_string()));
        }
        rational::parse(s).map(QuadExt::rational)
    }
}

/// Serialized as {"a": "p/q", "b": "p/q", "d": "n"}.
impl Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(de)?;
        let get = |k: &str| v.get(k).and_then(|x| x.as_str()).ok_or_else(|| D::Error::custom(format!("missing {k}")));
        let a = rational::parse(get("a")?).map_err(D::Error::custom)?;
        let b = rational::parse(get("b")?).map_err(D::Error::custom)?;
        let d: BigInt = get("d")?.parse().map_err(D::Error::custom)?;
        if !b.is_zero() && d.is_zero() {
            return Err(D::Error::custom("nonzero b needs a radicand"));
        }
        Ok(QuadExt::new(a, b, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};

    fn e(a: Rational, b: Rational, d: i64) -> QuadExt {
        QuadExt::new(a, b, BigInt::from(d))
    }

    #[test]
    fn arithmetic() {
        let s2 = e(q(0), q(1), 2);
        assert_eq!(s2.clone() * s2.clone(), QuadExt::from(q(2)));
        let x = e(q(1), q(1), 2);
        let y = x.clone() / x.clone();
        assert_eq!(y, QuadExt::one());
        assert_eq!(x.norm(), q(-1));
        assert_eq!(QuadExt::sqrt_of(&qf(8, 9)), e(q(0), qf(2, 3), 2));
        assert_eq!(QuadExt::sqrt_of(&q(9)), QuadExt::from(q(3)));
        assert_eq!(e(q(1), q(2), 1), QuadExt::from(q(3)));
    }

    #[test]
    #[should_panic]
    fn mixing_radicands_panics() {
        let _ = e(q(0), q(1), 2) + e(q(0), q(1), 3);
    }

    #[test]
    fn serde_roundtrip() {
        let x = e(qf(1, 3), qf(-2, 5), -7);
        let s = serde_json::to_string(&x).unwrap();
        let y: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
