//! Affine conics w² = g(t) with g quadratic, parametrized from a base point.

use crate::exactmath::{QuadExt, Rational, UniPoly};
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// A point [u : v] of ℙ¹ over ℚ(√d), normalized to v = 1 or [1 : 0].
#[derive(Clone, Debug, PartialEq)]
pub struct P1 {
    pub u: QuadExt,
    pub v: QuadExt,
}

impl P1 {
    pub fn new(u: QuadExt, v: QuadExt) -> P1 {
        if v.is_zero() {
            assert!(!u.is_zero(), "[0 : 0]");
            P1 { u: QuadExt::one(), v: QuadExt::zero() }
        } else {
            P1 { u: u / v, v: QuadExt::one() }
        }
    }
    pub fn infinity() -> P1 {
        P1 { u: QuadExt::one(), v: QuadExt::zero() }
    }
    pub fn is_infinite(&self) -> bool {
        self.v.is_zero()
    }
    pub fn to_json(&self) -> Value {
        if self.is_infinite() {
            json!("inf")
        } else {
            self.u.to_json()
        }
    }
}

/// a·u + b·v
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub a: QuadExt,
    pub b: QuadExt,
}

impl LinearForm {
    /// The monic form vanishing at p: u − p for finite p, v for p = ∞.
    pub fn vanishing_at(p: &P1) -> LinearForm {
        if p.is_infinite() {
            LinearForm { a: QuadExt::zero(), b: QuadExt::one() }
        } else {
            LinearForm { a: QuadExt::one(), b: -p.u.clone() }
        }
    }
    pub fn root(&self) -> Option<P1> {
        if self.a.is_zero() && self.b.is_zero() {
            None
        } else {
            Some(P1::new(-self.b.clone(), self.a.clone()))
        }
    }
    pub fn to_json(&self) -> Value {
        json!([self.a.to_json(), self.b.to_json()])
    }
}

/// num / den, both linear.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRatio {
    pub num: LinearForm,
    pub den: LinearForm,
}

impl LinearRatio {
    pub fn zero_over_pole(zero: &P1, pole: &P1) -> LinearRatio {
        LinearRatio { num: LinearForm::vanishing_at(zero), den: LinearForm::vanishing_at(pole) }
    }
    pub fn inverse(&self) -> LinearRatio {
        LinearRatio { num: self.den.clone(), den: self.num.clone() }
    }
    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConicPoint {
    pub t: QuadExt,
    pub w: QuadExt,
}

impl ConicPoint {
    pub fn to_json(&self) -> Value {
        json!({"t": self.t.to_json(), "w": self.w.to_json()})
    }
}

/// w² = c₂t² + c₁t + c₀ with c₂ ≠ 0, plus a base point for the
/// parametrization by slopes of lines through it.
#[derive(Clone, Debug, PartialEq)]
pub struct Conic {
    pub g: UniPoly,
    pub base: ConicPoint,
}

impl Conic {
    pub fn c(&self, k: usize) -> QuadExt {
        QuadExt::from(self.g.coeff(k))
    }

    pub fn g_at(&self, t: &QuadExt) -> QuadExt {
        self.g.eval_in(t)
    }

    pub fn contains(&self, p: &ConicPoint) -> bool {
        p.w.clone() * p.w.clone() == self.g_at(&p.t)
    }

    /// The two roots of g over ℚ(√disc).
    pub fn branch_points(&self) -> [QuadExt; 2] {
        let (c2, c1, c0) = (self.g.coeff(2), self.g.coeff(1), self.g.coeff(0));
        let disc = c1.clone() * c1.clone() - Rational::from_integer(4.into()) * c2.clone() * c0;
        let s = QuadExt::sqrt_of(&disc);
        let two_a = QuadExt::from(c2.clone() + c2);
        let m = QuadExt::from(-c1);
        [(m.clone() - s.clone()) / two_a.clone(), (m + s) / two_a]
    }

    /// Second intersection of the line of slope u/v through the base point.
    pub fn point_at(&self, p: &P1) -> Option<ConicPoint> {
        let (u, v) = (p.u.clone(), p.v.clone());
        let (tb, wb) = (self.base.t.clone(), self.base.w.clone());
        let (c2, c1) = (self.c(2), self.c(1));
        let two = QuadExt::from(Rational::from_integer(2.into()));
        let den = u.clone() * u.clone() - c2.clone() * v.clone() * v.clone();
        if den.is_zero() {
            return None; // the point lies over t = ∞
        }
        let inner = c1 * v.clone() - two.clone() * u.clone() * wb.clone() + two * c2 * tb.clone() * v.clone();
        let t = tb + v * inner.clone() / den.clone();
        let w = wb + u * inner / den;
        Some(ConicPoint { t, w })
    }

    /// Inverse of [`Conic::point_at`].
    pub fn param_of(&self, p: &ConicPoint) -> P1 {
        let (tb, wb) = (&self.base.t, &self.base.w);
        if p == &self.base {
            if wb.is_zero() {
                return P1::infinity();
            }
            let dg = self.g.derivative().eval_in(tb);
            return P1::new(dg, wb.clone() + wb.clone());
        }
        if &p.t == tb {
            return P1::infinity();
        }
        P1::new(p.w.clone() - wb.clone(), p.t.clone() - tb.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.coeffs().iter().map(crate::exactmath::rational::to_string).collect::<Vec<_>>(),
            "base": self.base.to_json(),
        })
    }
}
