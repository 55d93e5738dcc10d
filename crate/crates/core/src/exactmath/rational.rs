//! Big rationals and their "p/q" string encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Always emits `p/q`, even for integers.
pub fn to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// lcm of denominators of a list.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// gcd of numerators of a list (0 for an all-zero list).
pub fn numer_gcd<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

/// Square-free part of a nonzero integer together with the square factor:
/// n = sign * s * k^2 with s square-free and positive. Returns (sign*s, k).
/// Trial division only; intended for the modest radicands that show up here.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "squarefree part of zero");
    const LIMIT: u32 = 1 << 17;
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut k = BigInt::one();
    let mut p: u32 = 2;
    while p <= LIMIT && BigInt::from(p) * BigInt::from(p) <= m {
        let mut e = 0u32;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            k *= num_traits::pow(BigInt::from(p), (e / 2) as usize);
            if e % 2 == 1 {
                s *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // a cofactor with no prime below the limit counts as square-free unless it is a square
    if m > BigInt::one() {
        let r = m.sqrt();
        if &r * &r == m {
            k *= r;
        } else {
            s *= m;
        }
    }
    (sign * s, k)
}

/// If x is the square of a rational, return its nonnegative root.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &n * &n == *x.numer() && &d * &d == *x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// x = d * c^2 with d a square-free integer; returns (d, c).
pub fn rational_squarefree(x: &Rational) -> (BigInt, Rational) {
    // x = n/m = n*m / m^2
    let nm = x.numer() * x.denom();
    let (s, k) = squarefree_decompose(&nm);
    (s, Rational::new(k, x.denom().clone()))
}

pub fn parse_or_panic(s: &str) -> Rational {
    parse(s).expect("valid rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["3/4", "-7/2", "0/1", "5/1"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("6/8").unwrap(), qf(3, 4));
        assert_eq!(parse("12").unwrap(), q(12));
        assert!(parse("1/0").is_err());
        assert!(parse("a/b").is_err());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_decompose(&BigInt::from(72)), (BigInt::from(2), BigInt::from(6)));
        assert_eq!(squarefree_decompose(&BigInt::from(-45)), (BigInt::from(-5), BigInt::from(3)));
        let (d, c) = rational_squarefree(&qf(8, 3));
        assert_eq!(d, BigInt::from(6));
        assert_eq!(c.clone() * c * qi(d), qf(8, 3));
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&qf(2, 1)), None);
    }
}
