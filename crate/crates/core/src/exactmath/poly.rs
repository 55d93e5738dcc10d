//! Multivariate polynomials stored as a map from exponent vectors to
//! nonzero coefficients.

use super::field::Field;
use super::rational::{self, Rational};
use super::upoly::UniPoly;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, F>,
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable {0:?} not found")]
    UnknownVariable(String),
    #[error("zero polynomial")]
    Zero,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: F) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.nvars()], c);
        p
    }

    pub fn constant(vars: &[&str], c: F) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, F::one());
        p
    }

    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial_like(e, F::one())
    }

    pub fn monomial_like(&self, e: Vec<u32>, c: F) -> Self {
        let mut p = self.zero_like();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<(&Vec<u32>, &F)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = self.constant_like(F::one());
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut p = MultiPoly::<G> { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn lift<G: Field + From<F>>(&self) -> MultiPoly<G> {
        self.map_coeffs(|c| G::from(c.clone()))
    }

    pub fn eval(&self, pt: &[F]) -> F {
        self.eval_in(pt)
    }

    /// Evaluate at a point whose coordinates live in an extension field.
    pub fn eval_in<G: Field + From<F>>(&self, pt: &[G]) -> G {
        assert_eq!(pt.len(), self.nvars());
        // cache powers per variable
        let mut pows: Vec<Vec<G>> = Vec::with_capacity(pt.len());
        for (i, x) in pt.iter().enumerate() {
            let d = self.degree_in(i).unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(G::one());
            for k in 1..=d {
                let nx = v[k - 1].clone() * x.clone();
                v.push(nx);
            }
            pows.push(v);
        }
        let mut acc = G::zero();
        for (e, c) in &self.terms {
            let mut t = G::from(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * pows[i][k as usize].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn diff(&self, i: usize) -> Self {
        let mut p = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c.clone() * F::from(rational::q(e[i] as i64)));
            }
        }
        p
    }

    /// Substitute polynomials (all over a common variable list) for every variable.
    pub fn compose(&self, subs: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(subs.len(), self.nvars());
        assert!(!subs.is_empty());
        let target = subs[0].zero_like();
        let mut pows: Vec<Vec<MultiPoly<F>>> = Vec::new();
        for (i, s) in subs.iter().enumerate() {
            let d = self.degree_in(i).unwrap_or(0) as usize;
            let mut v = vec![target.constant_like(F::one())];
            for k in 1..=d {
                let nx = &v[k - 1] * s;
                v.push(nx);
            }
            pows.push(v);
        }
        let mut acc = target.clone();
        for (e, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &pows[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Set variable i to the constant c (the variable list is kept).
    pub fn subs_const(&self, i: usize, c: &F) -> Self {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut pw = vec![F::one()];
        for k in 1..=d {
            let nx = pw[k - 1].clone() * c.clone();
            pw.push(nx);
        }
        let mut p = self.zero_like();
        for (e, v) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            p.add_term(f, v.clone() * pw[k].clone());
        }
        p
    }

    /// Coefficients with respect to variable i, lowest degree first. Each
    /// coefficient keeps the full variable list with exponent 0 in slot i.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly<F>> {
        let d = match self.degree_in(i) {
            None => return vec![],
            Some(d) => d as usize,
        };
        let mut out = vec![self.zero_like(); d + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    /// Inverse of `coeffs_in`.
    pub fn from_coeffs_in(template: &Self, i: usize, cs: &[MultiPoly<F>]) -> Self {
        let mut p = template.zero_like();
        for (k, c) in cs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut f = e.clone();
                f[i] += k as u32;
                p.add_term(f, v.clone());
            }
        }
        p
    }

    /// Exact division by lex-leading terms; `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dinv = dc.inv();
        let mut rem = self.clone();
        let mut quo = self.zero_like();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = c * dinv.clone();
            let t = self.monomial_like(qe, qc);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    fn check_same_vars(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "variable lists differ: {:?} vs {:?}",
            self.vars,
            o.vars
        );
    }
}

impl MultiPoly<Rational> {
    /// Parse a polynomial from a list of (exponent vector, "p/q") pairs.
    pub fn from_json(vars: &[&str], v: &serde_json::Value) -> Result<Self, PolyError> {
        let arr = v.as_array().ok_or_else(|| PolyError::Malformed("expected a list of terms".into()))?;
        let mut p = Self::zero(vars);
        for t in arr {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| PolyError::Malformed("term is not a pair".into()))?;
            let e: Vec<u32> = serde_json::from_value(pair[0].clone()).map_err(|e| PolyError::Malformed(e.to_string()))?;
            if e.len() != vars.len() {
                return Err(PolyError::Malformed("exponent length".into()));
            }
            let c = pair[1].as_str().ok_or_else(|| PolyError::Malformed("coefficient not a string".into()))?;
            let c = rational::parse(c).map_err(|e| PolyError::Malformed(e.to_string()))?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(e, c)| serde_json::json!([e, rational::to_string(c)])).collect(),
        )
    }

    /// View as a univariate polynomial in variable i (all other exponents must be 0).
    pub fn to_upoly(&self, i: usize) -> Result<UniPoly, PolyError> {
        let mut cs = vec![Rational::zero(); self.degree_in(i).map(|d| d as usize + 1).unwrap_or(0)];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(PolyError::NotUnivariate);
            }
            cs[e[i] as usize] = c.clone();
        }
        Ok(UniPoly::new(cs))
    }

    pub fn from_upoly(vars: &[&str], i: usize, u: &UniPoly) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Scale to a primitive integer polynomial with positive lex-leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = rational::denom_lcm(self.terms.values());
        let g = rational::numer_gcd(self.terms.values().map(|c| c.clone() * Rational::from_integer(l.clone())).collect::<Vec<_>>().iter());
        let mut s = Rational::new(l, g);
        if self.leading().unwrap().1 < &Rational::zero() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn max_height_bits(&self) -> u64 {
        self.terms.values().map(|c| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, o: &MultiPoly<F>) -> MultiPoly<F> {
        self.check_same_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, o: &MultiPoly<F>) -> MultiPoly<F> {
        self.check_same_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, o: &MultiPoly<F>) -> MultiPoly<F> {
        self.check_same_vars(o);
        let mut p = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Add for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, o: MultiPoly<F>) -> MultiPoly<F> {
        &self + &o
    }
}
impl<F: Field> Sub for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, o: MultiPoly<F>) -> MultiPoly<F> {
        &self - &o
    }
}
impl<F: Field> Mul for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, o: MultiPoly<F>) -> MultiPoly<F> {
        &self * &o
    }
}
impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        -&self
    }
}

impl<F: Field + fmt::Display> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}{{", self.vars)?;
        for (e, c) in self.terms.iter().rev() {
            write!(f, " {:?}:{:?}", e, c)?;
        }
        write!(f, " }}")
    }
}

pub type Poly = MultiPoly<Rational>;

pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// Linear form a x + b y + c z.
pub fn linear_form(c: &[Rational; 3]) -> Poly {
    let mut p = Poly::zero(&XYZ);
    p.add_term(vec![1, 0, 0], c[0].clone());
    p.add_term(vec![0, 1, 0], c[1].clone());
    p.add_term(vec![0, 0, 1], c[2].clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    fn xyz() -> (Poly, Poly, Poly) {
        (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2))
    }

    #[test]
    fn ring_ops() {
        let (x, y, z) = xyz();
        let f = &(&x + &y) * &(&x - &y);
        let g = &x.pow(2) - &y.pow(2);
        assert_eq!(f, g);
        assert_eq!(f.total_degree(), Some(2));
        assert!(f.is_homogeneous());
        assert!(!(&f + &z).is_homogeneous());
        assert_eq!(f.eval(&[q(3), q(1), q(0)]), q(8));
        assert_eq!(f.diff(0), x.scale(&q(2)));
    }

    #[test]
    fn exact_division() {
        let (x, y, z) = xyz();
        let a = &(&x + &y.scale(&q(2))) + &z;
        let b = &(&x.pow(2) - &z.pow(2)) + &(&x * &y);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!((&p + &z).div_exact(&a), None);
    }

    #[test]
    fn compose_and_coeffs() {
        let (x, y, z) = xyz();
        let f = &(&x * &y) + &z.pow(2);
        let g = f.compose(&[y.clone(), x.clone(), &x + &y]);
        assert_eq!(g, &(&x * &y) + &(&x + &y).pow(2));
        let cs = f.coeffs_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coeffs_in(&f, 2, &cs), f);
    }

    #[test]
    fn json_roundtrip() {
        let (x, y, _) = xyz();
        let f = &x.scale(&crate::exactmath::rational::qf(3, 7)) - &y.pow(3);
        let j = f.to_json();
        assert_eq!(Poly::from_json(&XYZ, &j).unwrap(), f);
    }
}
