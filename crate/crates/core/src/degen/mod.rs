//! One-parameter degenerations from family r (t ≠ 0) to family r + 1 (t = 0).
//!
//! A path stores its components as polynomials in x, y, z, t in the labeled
//! order of family r, the labeled points and the weak marking as rational
//! point families, and the boundary instance. Fibers are rebuilt by
//! substituting t.

pub mod checks;
pub mod coble;
pub mod paths;

pub use checks::{boundary_marking_agrees, lattice_specialization, path_report, verify_equisingular, EquisingularReport, PathReport, SampleCheck, SpecializationMap};
pub use paths::{build_degeneration, build_degeneration_with, PathOptions};

use crate::curves::{geom, Pt};
use crate::exactmath::poly::{Poly, XYZ};
use crate::exactmath::{rational, Rational, UniPoly};
use crate::families::{FamilyError, MarkedSextic, Parts};
use crate::lattice::LatticeError;
use num_traits::Zero;
use serde_json::{json, Value};

pub const XYZT: [&str; 4] = ["x", "y", "z", "t"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DegenError {
    #[error("no degeneration from r = {0}")]
    BadLabel(u32),
    #[error("no valid path after {attempts} attempts: {last}")]
    RetryExhausted { attempts: usize, last: String },
    #[error("boundary fiber fails membership in family {r}: {detail}")]
    Boundary { r: u32, detail: String },
    #[error("marking has a pole at t = 0")]
    Pole,
    #[error("degenerate path: {0}")]
    Degenerate(String),
    #[error("lattice specialization: {0}")]
    Gram(String),
    #[error("{0}")]
    Family(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl From<FamilyError> for DegenError {
    fn from(e: FamilyError) -> Self {
        DegenError::Family(e.to_string())
    }
}

/// A point (x(t) : y(t) : z(t)) / d(t) with polynomial coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PointFamily {
    pub num: [UniPoly; 3],
    pub den: UniPoly,
}

impl PointFamily {
    pub fn constant(p: &Pt) -> PointFamily {
        PointFamily { num: std::array::from_fn(|i| UniPoly::constant(p[i].clone())), den: UniPoly::one() }
    }

    pub fn polynomial(num: [UniPoly; 3]) -> PointFamily {
        PointFamily { num, den: UniPoly::one() }
    }

    /// The point at t; `None` at a pole or where all coordinates vanish.
    pub fn at(&self, t: &Rational) -> Option<Pt> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        let p: Pt = std::array::from_fn(|i| self.num[i].eval(t) / d.clone());
        if geom::is_zero_vec(&p) {
            None
        } else {
            Some(geom::normalize(&p))
        }
    }

    /// Exact limit at t = 0.
    pub fn limit_at_zero(&self) -> Result<Pt, DegenError> {
        if self.den.eval(&Rational::zero()).is_zero() {
            return Err(DegenError::Pole);
        }
        self.at(&Rational::zero()).ok_or_else(|| DegenError::Degenerate("marking vanishes at t = 0".into()))
    }

    pub fn to_json(&self) -> Value {
        let up = |u: &UniPoly| u.coeffs().iter().map(rational::to_string).collect::<Vec<_>>();
        json!({"num": self.num.iter().map(up).collect::<Vec<_>>(), "den": up(&self.den)})
    }
}

/// Embed a form in x, y, z into ℚ[x, y, z, t].
pub fn lift_t(f: &Poly) -> Poly {
    Poly::from_terms(&XYZT, f.terms().map(|(e, c)| (vec![e[0], e[1], e[2], 0], c.clone())))
}

/// Substitute t = t₀ and return a form in x, y, z.
pub fn at_t(f: &Poly, t0: &Rational) -> Poly {
    let g = f.subs_const(3, t0);
    Poly::from_terms(&XYZ, g.terms().map(|(e, c)| (e[..3].to_vec(), c.clone())))
}

/// Labeled data of family r as polynomials in t.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFamily {
    /// Components in the labeled order of family r, in ℚ[x, y, z, t].
    pub components: Vec<Poly>,
    /// The point p (r = 12, 14) or the assigned rational nodes (r ≤ 11).
    pub points: Vec<PointFamily>,
}

impl CurveFamily {
    pub fn equation(&self) -> Poly {
        let mut f = Poly::constant(&XYZT, Rational::from_integer(1.into()));
        for c in &self.components {
            f = &f * c;
        }
        f
    }

    /// Labeled parts of the fiber at t₀.
    pub fn parts_at(&self, r: u32, t0: &Rational) -> Result<Parts, DegenError> {
        let comps: Vec<Poly> = self.components.iter().map(|c| at_t(c, t0).primitive()).collect();
        let pts: Vec<Pt> = self.points.iter().map(|p| p.at(t0).ok_or_else(|| DegenError::Degenerate(format!("labeled point undefined at t = {t0}")))).collect::<Result<_, _>>()?;
        let line = |f: &Poly| geom::line_coeffs(f).ok_or_else(|| DegenError::Degenerate("line component degenerates".into()));
        let lines = |fs: &[Poly]| fs.iter().map(line).collect::<Result<Vec<Pt>, _>>();
        let bad = || DegenError::Degenerate(format!("wrong component count for r = {r}"));
        Ok(match r {
            16 | 17 => Parts::Lines { lines: lines(&comps)?.try_into().map_err(|_| bad())? },
            15 => Parts::ConicLines { conic: comps[0].clone(), lines: lines(&comps[1..])?.try_into().map_err(|_| bad())? },
            14 => Parts::CubicLines { cubic: comps[0].clone(), lines: lines(&comps[1..])?.try_into().map_err(|_| bad())?, p: pts.first().cloned().ok_or_else(bad)? },
            13 => Parts::CubicConicLine { cubic: comps[0].clone(), conic: comps[1].clone(), line: line(&comps[2])? },
            12 => Parts::TwoCubics { c1: comps[0].clone(), c2: comps[1].clone(), p: pts.first().cloned().ok_or_else(bad)? },
            3..=11 => Parts::Irreducible { sextic: comps[0].clone(), nodes: pts },
            _ => return Err(DegenError::BadLabel(r)),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": XYZT,
            "components": self.components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "equation": self.equation().to_json(),
            "points": self.points.iter().map(PointFamily::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A fiber at a sample parameter.
#[derive(Clone, Debug)]
pub struct Sample {
    pub t: Rational,
    pub fiber: MarkedSextic,
}

#[derive(Clone, Debug)]
pub struct DegenerationPath {
    /// Family of the fibers over t ≠ 0.
    pub r: u32,
    pub family: CurveFamily,
    pub q1: PointFamily,
    pub q2: PointFamily,
    pub boundary: MarkedSextic,
    pub samples: Vec<Sample>,
    /// For each component of family r, the boundary components it tends to.
    pub component_map: Vec<Vec<usize>>,
    /// The boundary node that the fibers smooth, when rational.
    pub smoothed: Option<Pt>,
    /// Node of a splitting cubic that stays a node along the path.
    pub unresolved: Option<Pt>,
    /// Recipe description.
    pub recipe: String,
}

impl DegenerationPath {
    /// The fiber at any t (membership is not checked).
    pub fn fiber(&self, t: &Rational) -> Result<MarkedSextic, DegenError> {
        let parts = self.family.parts_at(self.r, t)?;
        let q1 = self.q1.at(t).ok_or(DegenError::Pole)?;
        let q2 = self.q2.at(t).ok_or(DegenError::Pole)?;
        Ok(MarkedSextic::new(self.r, parts, q1, q2, self.boundary.seed)?)
    }

    /// The t = 0 fiber of the family, compared with the boundary curve up to scale.
    pub fn boundary_fiber_matches(&self) -> bool {
        let f0 = at_t(&self.family.equation(), &Rational::zero());
        let b = self.boundary.curve.equation();
        !f0.is_zero() && (f0.primitive() == b.primitive() || f0.primitive() == -b.primitive())
    }

    pub fn to_json(&self, checks: Value) -> Value {
        json!({
            "r": self.r,
            "recipe": self.recipe,
            "curve_family": self.family.to_json(),
            "markings": {"q1": self.q1.to_json(), "q2": self.q2.to_json()},
            "samples": self.samples.iter().map(|s| json!({"t": rational::to_string(&s.t), "fiber": s.fiber.to_json()})).collect::<Vec<_>>(),
            "boundary_instance": self.boundary.to_json(),
            "component_map": self.component_map,
            "smoothed_node": self.smoothed.as_ref().map(geom::pt_to_json),
            "unresolved_point": self.unresolved.as_ref().map(geom::pt_to_json),
            "checks": checks,
        })
    }
}
