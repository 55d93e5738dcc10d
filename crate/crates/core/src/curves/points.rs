//! Finite sets of conjugate algebraic points, {(c₀(θ) : c₁(θ) : c₂(θ)) : h(θ) = 0}.

use super::geom::{self, Pt};
use crate::exactmath::poly::Poly;
use crate::exactmath::quadext::QuadExt;
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::resring;
use crate::exactmath::upoly::UniPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgPoints {
    /// Monic square-free minimal data; not necessarily irreducible.
    pub h: UniPoly,
    pub coords: [UniPoly; 3],
}

impl AlgPoints {
    pub fn new(h: UniPoly, coords: [UniPoly; 3]) -> Self {
        let h = h.monic();
        let coords = coords.map(|c| c.rem(&h));
        AlgPoints { h, coords }
    }

    pub fn degree(&self) -> usize {
        self.h.deg()
    }

    /// f evaluated at the generic point, reduced mod h.
    pub fn eval(&self, f: &Poly) -> UniPoly {
        let mut pows: Vec<Vec<UniPoly>> = vec![];
        for i in 0..3 {
            let d = f.degree_in(i).unwrap_or(0) as usize;
            let mut v = vec![UniPoly::one()];
            for k in 1..=d {
                let nx = (&v[k - 1] * &self.coords[i]).rem(&self.h);
                v.push(nx);
            }
            pows.push(v);
        }
        let mut acc = UniPoly::zero();
        for (e, c) in f.terms() {
            let mut t = UniPoly::constant(c.clone());
            for i in 0..3 {
                if e[i] > 0 {
                    t = (&t * &pows[i][e[i] as usize]).rem(&self.h);
                }
            }
            acc = &acc + &t;
        }
        acc.rem(&self.h)
    }

    /// Restrict to the factor g of h.
    pub fn restrict(&self, g: &UniPoly) -> AlgPoints {
        AlgPoints::new(g.clone(), self.coords.clone())
    }

    /// Split into the points where p vanishes and where it does not.
    pub fn split(&self, p: &UniPoly) -> (Option<AlgPoints>, Option<AlgPoints>) {
        let (z, nz) = resring::split_by(&self.h, p);
        let wrap = |g: UniPoly| if g.deg() == 0 { None } else { Some(self.restrict(&g)) };
        (wrap(z), wrap(nz))
    }

    pub fn split_poly(&self, f: &Poly) -> (Option<AlgPoints>, Option<AlgPoints>) {
        if !f.is_homogeneous() {
            return self.split(&self.eval(f));
        }
        // projective rescaling to integer coordinates keeps the zero set and
        // lets the products run over ℤ with one reduction at the end
        let all = self.coords.iter().flat_map(|c| c.coeffs().iter());
        let l = rational::denom_lcm(all);
        let c: [Vec<BigInt>; 3] = self.coords.clone().map(|c| c.coeffs().iter().map(|a| (a * Rational::from_integer(l.clone())).to_integer()).collect());
        let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            if a.is_empty() || b.is_empty() {
                return vec![];
            }
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut pows: Vec<Vec<Vec<BigInt>>> = vec![];
        for (i, ci) in c.iter().enumerate() {
            let d = f.degree_in(i).unwrap_or(0) as usize;
            let mut v = vec![vec![BigInt::one()]];
            for k in 1..=d {
                let nx = mul(&v[k - 1], ci);
                v.push(nx);
            }
            pows.push(v);
        }
        let fi = f.primitive();
        let mut acc: Vec<BigInt> = vec![];
        for (e, a) in fi.terms() {
            let t = (0..3).fold(vec![a.to_integer()], |t, i| mul(&t, &pows[i][e[i] as usize]));
            if acc.len() < t.len() {
                acc.resize(t.len(), BigInt::zero());
            }
            for (x, y) in acc.iter_mut().zip(t) {
                *x += y;
            }
        }
        self.split(&UniPoly::new(acc.into_iter().map(Rational::from_integer).collect()))
    }

    pub fn to_rational(&self) -> Option<Pt> {
        if self.degree() != 1 {
            return None;
        }
        let root = -self.h.coeff(0);
        Some(geom::normalize(&[self.coords[0].eval(&root), self.coords[1].eval(&root), self.coords[2].eval(&root)]))
    }

    /// Explicit coordinates when h is quadratic: the two conjugate points.
    pub fn quad_points(&self) -> Option<[[QuadExt; 3]; 2]> {
        if self.degree() != 2 {
            return None;
        }
        let p = self.h.coeff(1);
        let q = self.h.coeff(0);
        let disc = p.clone() * p.clone() - rational::q(4) * q;
        let s = QuadExt::sqrt_of(&disc);
        let half = QuadExt::from(rational::qf(1, 2));
        let mp = QuadExt::from(-p);
        let t1 = (mp.clone() + s.clone()) * half.clone();
        let t2 = (mp - s) * half;
        let at = |t: &QuadExt| [self.coords[0].eval_in(t), self.coords[1].eval_in(t), self.coords[2].eval_in(t)];
        Some([at(&t1), at(&t2)])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let u = |p: &UniPoly| serde_json::json!(p.coeffs().iter().map(rational::to_string).collect::<Vec<_>>());
        serde_json::json!({
            "minpoly": u(&self.h),
            "coords": [u(&self.coords[0]), u(&self.coords[1]), u(&self.coords[2])],
        })
    }
}

/// A rational point or a cluster of conjugate points.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSet {
    Rational(Pt),
    Cluster(AlgPoints),
}

impl PointSet {
    pub fn from_alg(a: AlgPoints) -> PointSet {
        match a.to_rational() {
            Some(p) => PointSet::Rational(p),
            None => PointSet::Cluster(a),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            PointSet::Rational(_) => 1,
            PointSet::Cluster(a) => a.degree(),
        }
    }

    pub fn as_rational(&self) -> Option<&Pt> {
        match self {
            PointSet::Rational(p) => Some(p),
            PointSet::Cluster(_) => None,
        }
    }

    /// True iff f vanishes at every point of the set.
    pub fn all_on(&self, f: &Poly) -> bool {
        match self {
            PointSet::Rational(p) => f.eval(p).is_zero(),
            PointSet::Cluster(a) => a.eval(f).is_zero(),
        }
    }

    pub fn is_point(&self, q: &Pt) -> bool {
        matches!(self, PointSet::Rational(p) if geom::same_point(p, q))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PointSet::Rational(p) => serde_json::json!({"rational": geom::pt_to_json(p)}),
            PointSet::Cluster(a) => serde_json::json!({"cluster": a.to_json()}),
        }
    }
}

impl From<Pt> for PointSet {
    fn from(p: Pt) -> Self {
        PointSet::Rational(p)
    }
}

