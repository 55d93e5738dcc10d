//! Dense polynomials over 𝔽_p for small primes p < 2^31.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub type Fp = Vec<u64>;

pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime(n))
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for b in BASES {
        let mut x = powm(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Reduce a rational; `None` if the denominator vanishes mod p.
pub fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(reduce_int(x.numer(), p) * inv(d, p) % p)
}

pub fn from_rationals(cs: &[Rational], p: u64) -> Option<Fp> {
    let mut v = Vec::with_capacity(cs.len());
    for c in cs {
        v.push(reduce_rational(c, p)?);
    }
    Some(trim(v))
}

pub fn trim(mut v: Fp) -> Fp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn deg(a: &Fp) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut v = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        v[i] = (x + p - y) % p;
    }
    trim(v)
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial mod p");
    let li = inv(b[db], p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] * li % p;
        q[dr - db] = c;
        for (j, y) in b.iter().enumerate() {
            let k = dr - db + j;
            r[k] = (r[k] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match deg(a) {
        None => vec![],
        Some(d) => {
            let li = inv(a[d], p);
            a.iter().map(|x| x * li % p).collect()
        }
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
}

pub fn eval(a: &Fp, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

/// base^e mod m
pub fn powmod(base: &Fp, mut e: BigInt, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    let two = BigInt::from(2);
    while !e.is_zero() {
        if e.is_odd() {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e /= &two;
    }
    r
}

pub fn roots(a: &Fp, p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(a, x, p) == 0).collect()
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Fp, p: u64) -> bool {
    let n = match deg(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    let x = vec![0, 1];
    let pb = BigInt::from(p);
    let xp = |k: usize| powmod(&x, num_traits::pow(pb.clone(), k), &f, p);
    if sub(&xp(n), &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    let mut primes = vec![];
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    for q in primes {
        let g = gcd(&sub(&xp(n / q), &x, p), &f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        // x^2 + 1 is irreducible mod 3, reducible mod 5
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        assert!(!is_irreducible(&vec![1, 0, 1], 5));
        // x^4 + 1 is reducible mod every prime
        for p in [3, 5, 7, 11, 13] {
            assert!(!is_irreducible(&vec![1, 0, 0, 0, 1], p));
        }
        // x^3 - 2 mod 7 is irreducible (2 is not a cube mod 7)
        assert!(is_irreducible(&vec![5, 0, 0, 1], 7));
    }

    #[test]
    fn gcd_and_roots() {
        let p = 13;
        let a = mul(&vec![p - 1, 1], &vec![p - 2, 1], p);
        let b = mul(&vec![p - 1, 1], &vec![p - 5, 1], p);
        assert_eq!(gcd(&a, &b, p), vec![p - 1, 1]);
        assert_eq!(roots(&a, p), vec![1, 2]);
    }
}
