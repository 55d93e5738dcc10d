//! Univariate polynomials over ℚ, coefficients lowest degree first.

use super::field::Field;
use super::modp;
use super::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }
    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }
    pub fn x() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }
    pub fn constant(a: Rational) -> Self {
        UniPoly::new(vec![a])
    }
    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&k| rational::q(k)).collect())
    }
    /// x − a
    pub fn linear_root(a: &Rational) -> Self {
        UniPoly::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }
    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }
    /// Degree with deg 0 = −∞ folded to 0; use only for nonzero polys.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }
    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_in<G: Field>(&self, x: &G) -> G {
        self.c.iter().rev().fold(G::zero(), |acc, c| acc * x.clone() + G::from(c.clone()))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        UniPoly::new(self.c.iter().map(|c| c * a).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&(Rational::one() / l))
    }

    pub fn shift_mul(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = UniPoly::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(self.c.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
    }

    /// f(g(x))
    pub fn compose(&self, g: &UniPoly) -> Self {
        self.c.iter().rev().fold(UniPoly::zero(), |acc, c| &(&acc * g) + &UniPoly::constant(c.clone()))
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = Rational::one() / d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] * &li;
            for (j, dc) in d.c.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = &r[idx] - &f * dc;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        match (self.degree(), o.degree()) {
            (None, _) => o.monic(),
            (_, None) => self.monic(),
            (Some(0), _) | (_, Some(0)) => UniPoly::one(),
            _ => modular_gcd(self, o),
        }
    }

    /// (g, s, t) with s·self + t·o = g, g monic.
    pub fn ext_gcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(&r1);
            let s = &s0 - &(&qq * &s1);
            let t = &t0 - &(&qq * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = Rational::one() / r0.lc();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    /// Inverse modulo h, or `Err(g)` with g = gcd(self, h) nontrivial.
    pub fn inverse_mod(&self, h: &UniPoly) -> Result<UniPoly, UniPoly> {
        let a = self.rem(h);
        let g = a.gcd(h);
        if g.degree() != Some(0) {
            return Err(if g.is_zero() { h.monic() } else { g });
        }
        let n = h.deg();
        if n <= 1 {
            return Ok(UniPoly::constant(Rational::one() / a.coeff(0)));
        }
        // columns a·xʲ mod h; solve for the coefficients of a⁻¹
        let mut cols = vec![a.clone()];
        for j in 1..n {
            let nx = cols[j - 1].shift_mul(1).rem(h);
            cols.push(nx);
        }
        // integral rows, then Cramer's rule with fraction-free determinants
        let mut rows: Vec<Vec<BigInt>> = vec![];
        let mut rhs = vec![];
        for i in 0..n {
            let r: Vec<Rational> = cols.iter().map(|c| c.coeff(i)).collect();
            let l = rational::denom_lcm(r.iter());
            let lq = Rational::from_integer(l.clone());
            rows.push(r.iter().map(|x| (x * &lq).to_integer()).collect());
            rhs.push(if i == 0 { l } else { BigInt::zero() });
        }
        let det = super::resultant::bareiss_det_int(rows.clone());
        let v: Vec<Rational> = (0..n)
            .map(|j| {
                let mut mj = rows.clone();
                for i in 0..n {
                    mj[i][j] = rhs[i].clone();
                }
                Rational::new(super::resultant::bareiss_det_int(mj), det.clone())
            })
            .collect();
        Ok(UniPoly::new(v))
    }

    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero(), "squarefree part of zero");
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun's algorithm: monic square-free a_i with self = lc · ∏ a_i^i.
    /// Returns the nonconstant a_i with their multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = vec![];
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.deg() == 0 {
                break;
            }
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// A nonzero rational multiple of self mod d, computed by pseudo-division
    /// over ℤ. Enough wherever only the zero set matters.
    pub fn rem_up_to_scale(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return UniPoly::zero();
        }
        let dv = d.integer_coeffs();
        let mut r = self.integer_coeffs();
        let n = dv.len() - 1;
        let lc = &dv[n];
        while r.len() > n {
            let k = r.len() - 1;
            let c = r[k].clone();
            for x in r.iter_mut() {
                *x *= lc;
            }
            for j in 0..n {
                r[k - n + j] -= &c * &dv[j];
            }
            r.pop();
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
            let g = r.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
            if !g.is_zero() && !g.is_one() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
        UniPoly::new(r.into_iter().map(Rational::from_integer).collect())
    }

    /// Primitive integer coefficients with positive leading coefficient.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = rational::denom_lcm(self.c.iter());
        let ints: Vec<BigInt> = self.c.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        let sgn = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|x| x / &g * &sgn).collect()
    }

    /// All distinct rational roots, via p-adic lifting and rational reconstruction.
    pub fn rational_roots(&self) -> Vec<Rational> {
        assert!(!self.is_zero(), "roots of zero polynomial");
        let mut f = self.squarefree_part();
        let mut out = vec![];
        if f.deg() == 0 {
            return out;
        }
        if f.coeff(0).is_zero() {
            out.push(Rational::zero());
            f = f.div_exact(&UniPoly::x());
        }
        if f.deg() == 0 {
            return out;
        }
        let ci = f.integer_coeffs();
        let lc = ci.last().unwrap().abs();
        let c0 = ci[0].abs();
        let bound = if lc > c0 { lc.clone() } else { c0.clone() };
        let target = BigInt::from(2) * &bound * &bound;
        // choose a prime keeping degree and squarefreeness
        let fq: Vec<Rational> = ci.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let mut chosen = None;
        for p in modp::primes_from(97).take(500) {
            if modp::reduce_int(&lc, p) == 0 {
                continue;
            }
            let fp = modp::from_rationals(&fq, p).unwrap();
            let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
            if modp::deg(&g) == Some(0) {
                chosen = Some((p, fp));
                break;
            }
        }
        let (p, fp) = chosen.expect("no good prime for root finding");
        let pb = BigInt::from(p);
        let dci: Vec<BigInt> = ci.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        let ev = |cs: &[BigInt], x: &BigInt, m: &BigInt| cs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m));
        for r0 in modp::roots(&fp, p) {
            let mut r = BigInt::from(r0);
            let mut m = pb.clone();
            while m <= target {
                m = &m * &m;
                let fv = ev(&ci, &r, &m);
                let dv = ev(&dci, &r, &m);
                let di = mod_inverse(&dv, &m).expect("simple root mod p");
                r = (&r - fv * di).mod_floor(&m);
            }
            if let Some(cand) = rational_reconstruct(&r, &m) {
                if f.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Irreducibility certificate: true only if some prime keeps the degree and
    /// makes the reduction irreducible. `false` means "not certified".
    pub fn certify_irreducible(&self, tries: usize) -> bool {
        let f = self.integer_coeffs();
        let fq: Vec<Rational> = f.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        for p in modp::primes_from(3).take(tries) {
            if modp::reduce_int(&f[n], p) == 0 {
                continue;
            }
            let fp = modp::from_rationals(&fq, p).unwrap();
            if modp::is_irreducible(&fp, p) {
                return true;
            }
        }
        false
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Find a/b ≡ r mod m with |a|, |b| < sqrt(m/2).
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qq = &r0 / &r1;
        let r2 = &r0 - &qq * &r1;
        let t2 = &t0 - &qq * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}
impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}
impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        // clear denominators so the inner loop stays in ℤ
        let ints = |p: &UniPoly| {
            let l = rational::denom_lcm(p.c.iter());
            let v: Vec<BigInt> = p.c.iter().map(|a| a.numer() * (&l / a.denom())).collect();
            (l, v)
        };
        let (la, a) = ints(self);
        let (lb, b) = ints(o);
        let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        let l = la * lb;
        UniPoly::new(c.into_iter().map(|x| Rational::new(x, l.clone())).collect())
    }
}
impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| -x).collect())
    }
}
impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}
impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}
impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("({})x", c),
                _ => format!("({})x^{}", c, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};

    fn from_roots(rs: &[Rational]) -> UniPoly {
        rs.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear_root(r))
    }

    #[test]
    fn division_and_gcd() {
        let a = from_roots(&[q(1), q(2), q(3)]);
        let b = from_roots(&[q(2), q(5)]);
        assert_eq!(a.gcd(&b), UniPoly::linear_root(&q(2)));
        let (qq, r) = a.divrem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree() {
        let f = from_roots(&[q(1), q(1), q(2)]);
        assert_eq!(f.squarefree_part(), from_roots(&[q(1), q(2)]));
        let x3 = UniPoly::x().pow(3);
        assert_eq!(x3.squarefree_part(), UniPoly::x());
        let x2p1 = UniPoly::from_ints(&[1, 0, 1]);
        let g = &x2p1.pow(2) * &UniPoly::linear_root(&q(3));
        assert_eq!(g.squarefree_part(), &x2p1 * &UniPoly::linear_root(&q(3)));
        let dec = g.squarefree_decomposition();
        assert_eq!(dec, vec![(UniPoly::linear_root(&q(3)), 1), (x2p1, 2)]);
    }

    #[test]
    fn rational_roots_found() {
        let rs = [qf(-7, 3), q(0), qf(5, 11), q(12), qf(123456789, 1000003)];
        let f = &from_roots(&rs) * &UniPoly::from_ints(&[2, 0, 1]);
        let mut want = rs.to_vec();
        want.sort();
        assert_eq!(f.rational_roots(), want);
        assert!(UniPoly::from_ints(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn irreducibility() {
        assert!(UniPoly::from_ints(&[-2, 0, 0, 1]).certify_irreducible(50));
        assert!(!from_roots(&[q(1), q(2)]).certify_irreducible(50));
    }

    #[test]
    fn inverse_mod() {
        let h = UniPoly::from_ints(&[-2, 0, 1]);
        let a = UniPoly::from_ints(&[1, 1]);
        let ai = a.inverse_mod(&h).unwrap();
        assert_eq!((&a * &ai).rem(&h), UniPoly::one());
        let h2 = from_roots(&[q(1), q(2)]);
        assert_eq!(UniPoly::linear_root(&q(1)).inverse_mod(&h2), Err(UniPoly::linear_root(&q(1))));
    }
}

/// Brown's small-prime gcd over ℤ, each candidate confirmed by exact division.
fn modular_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let a = f.integer_coeffs();
    let b = g.integer_coeffs();
    let (la, lb) = (a.last().unwrap().clone(), b.last().unwrap().clone());
    let gamma = la.gcd(&lb);
    let (fq, gq) = (UniPoly::new(a.iter().cloned().map(Rational::from_integer).collect()), UniPoly::new(b.iter().cloned().map(Rational::from_integer).collect()));
    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = vec![];
    let mut m = BigInt::one();
    let mut prev: Option<UniPoly> = None;
    for p in modp::primes_from(1 << 30) {
        if modp::reduce_int(&la, p) == 0 || modp::reduce_int(&lb, p) == 0 {
            continue;
        }
        let ap: modp::Fp = a.iter().map(|x| modp::reduce_int(x, p)).collect();
        let bp: modp::Fp = b.iter().map(|x| modp::reduce_int(x, p)).collect();
        let gp = modp::gcd(&modp::trim(ap), &modp::trim(bp), p);
        let d = modp::deg(&gp).unwrap_or(0);
        if d == 0 {
            return UniPoly::one();
        }
        let gm = modp::reduce_int(&gamma, p);
        let scaled: Vec<u64> = gp.iter().map(|c| c * gm % p).collect();
        let pb = BigInt::from(p);
        match best {
            Some(bd) if d > bd => continue,
            Some(bd) if d == bd => {
                let minv = BigInt::from(modp::inv(modp::reduce_int(&m, p), p));
                for (x, w) in acc.iter_mut().zip(&scaled) {
                    let t = ((BigInt::from(*w) - &*x) * &minv).mod_floor(&pb);
                    *x += &m * t;
                }
                m *= &pb;
            }
            _ => {
                best = Some(d);
                acc = scaled.iter().map(|&c| BigInt::from(c)).collect();
                m = pb;
                prev = None;
                continue;
            }
        }
        let half = &m / 2;
        let cand = UniPoly::new(acc.iter().map(|x| Rational::from_integer(if *x > half { x - &m } else { x.clone() })).collect());
        if prev.as_ref() == Some(&cand) {
            let h = cand.monic();
            if fq.rem(&h).is_zero() && gq.rem(&h).is_zero() {
                return h;
            }
        }
        prev = Some(cand);
    }
    unreachable!("prime supply exhausted")
}
