//! Higher Chow cycle certificates ξ = (Z₀, f₀) + (Z₁, f₁) on the double cover.
//!
//! Z₀ is the normalization of the preimage of the marking line L, modeled as
//! the conic w² = g(t) where B|_L = t²(t − 1)²·g(t) in the parameter
//! P(t) = q₁ + t·(k·q₂ − q₁). Z₁ is the exceptional curve over the chosen node
//! Q, modeled as v² = τ(s) with τ the tangent-cone quadric of B at Q on the
//! directions dir_L + s·n. Both curves meet over the direction of L, at the
//! points with w = v = ±√g(t_Q); the sign is the branch label. Token "0" puts
//! p₀ on the + branch.

pub mod build;
pub mod check;
pub mod conic;

pub use build::{build_cycle, build_cycle_with, BaseChoice, CycleOptions};
pub use check::{conjugate_cycle, cycle_classes, verify_divisor_sum, ClassReport, DivisorCheck};
pub use conic::{Conic, ConicPoint, LinearForm, LinearRatio, P1};

use crate::curves::{geom, CurveError, Pt};
use crate::exactmath::{QuadExt, Rational};
use crate::families::{Branch, MarkedSextic};
use crate::lattice::LatticeError;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CycleError {
    #[error("genericity condition fails: {0}")]
    Genericity(String),
    #[error("no strong marking set")]
    NoStrongMarking,
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("certificate does not match the model: {0}")]
    Mismatch(String),
    #[error("unknown cycle choice {0:?}")]
    BadWhich(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which exceptional curve plays the role of Z₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Node1,
    Node2,
}

impl Which {
    pub fn token(self) -> &'static str {
        match self {
            Which::Node1 => "node-1",
            Which::Node2 => "node-2",
        }
    }
    pub fn from_token(s: &str) -> Result<Which, CycleError> {
        match s {
            "node-1" | "1" => Ok(Which::Node1),
            "node-2" | "2" => Ok(Which::Node2),
            _ => Err(CycleError::BadWhich(s.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCoverLine {
    pub line: Pt,
    pub origin: Pt,
    pub direction: Pt,
    pub t_q1: Rational,
    pub t_q2: Rational,
    /// The two simple points of B on L, in t.
    pub s: [QuadExt; 2],
    pub conic: Conic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalCurve {
    /// The vector P(t_Q) of the node.
    pub center: Pt,
    pub transversal: Pt,
    /// The two tangent directions of B at the node, in s.
    pub tangents: [QuadExt; 2],
    pub conic: Conic,
}

/// A point of Z₀ ∩ Z₁ in the coordinates of both curves.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub on_z0: ConicPoint,
    pub on_z1: ConicPoint,
}

impl Crossing {
    fn to_json(&self) -> Value {
        json!({"z0": self.on_z0.to_json(), "z1": self.on_z1.to_json()})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleCertificate {
    pub r: u32,
    pub which: Which,
    pub marking: Branch,
    pub node: Pt,
    pub z0: DoubleCoverLine,
    pub z1: ExceptionalCurve,
    /// Square-free part of g(t_Q); 1 when p₀, p_∞ are rational.
    pub d: BigInt,
    pub p0: Crossing,
    pub p_inf: Crossing,
    pub f0: LinearRatio,
    pub f1: LinearRatio,
}

impl CycleCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "which": self.which.token(),
            "strong_marking": self.marking.token(),
            "node": geom::pt_to_json(&self.node),
            "d": self.d.to_string(),
            "p0": self.p0.to_json(),
            "p_inf": self.p_inf.to_json(),
            "f0": self.f0.to_json(),
            "f1": self.f1.to_json(),
            "z0": self.z0.conic.to_json(),
            "z1": self.z1.conic.to_json(),
        })
    }
}

/// Certificate together with its class identities and divisor check.
#[derive(Clone, Debug)]
pub struct CycleReport {
    pub cert: CycleCertificate,
    pub divisor: DivisorCheck,
    pub classes: ClassReport,
}

impl CycleReport {
    pub fn pass(&self) -> bool {
        self.divisor.pass && self.classes.pass()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.cert.to_json();
        let c = &self.classes;
        v["classes"] = c.to_json();
        v["checks"] = json!({
            "divisor_sum": self.divisor.pass,
            "squares": c.squares == (-2, -2),
            "product": c.product == 2,
            "isotropic": c.sum_square == 0,
            "primitive": c.primitive,
        });
        v
    }
}

/// Build, verify and classify in one go.
pub fn cycle_report(ms: &MarkedSextic, which: Which) -> Result<CycleReport, CycleError> {
    let cert = build_cycle(ms, which)?;
    let model = crate::lattice::build_resolution(ms)?;
    let classes = cycle_classes(&cert, &model)?;
    let divisor = verify_divisor_sum(&cert);
    Ok(CycleReport { cert, divisor, classes })
}
