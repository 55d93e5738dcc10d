//! The marked-sextic families r = 3..18: generators, membership and
//! genericity checks, and the ℙ¹×ℙ¹ normal form for r = 18.

pub mod construct;
pub mod generate;
pub mod normal_form;
pub mod verify;

pub use generate::{generate_instance, generate_with, GenConfig};
pub use normal_form::{instance_from_lambdas, p1p1_normal_form};
pub use verify::{check_genericity, verify_membership, Clause, Genericity, MembershipReport};

use crate::curves::geom::{self, Pt};
use crate::curves::{singular_locus_certified, CurveError, PlaneCurve, SingularLocus};
use crate::exactmath::poly::{Poly, XYZ};
use serde_json::{json, Value};
use std::sync::{Arc, OnceLock};

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("family label {0} outside 3..=18")]
    BadLabel(u32),
    #[error("retry budget of {attempts} exhausted for r = {r}: {last}")]
    RetryExhausted { r: u32, attempts: usize, last: String },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Branch of the double cover over q₁ along the line q₁q₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Zero,
    Inf,
}

impl Branch {
    pub fn token(self) -> &'static str {
        match self {
            Branch::Zero => "0",
            Branch::Inf => "inf",
        }
    }
    pub fn from_token(s: &str) -> Option<Branch> {
        match s {
            "0" => Some(Branch::Zero),
            "inf" => Some(Branch::Inf),
            _ => None,
        }
    }
    pub fn other(self) -> Branch {
        match self {
            Branch::Zero => Branch::Inf,
            Branch::Inf => Branch::Zero,
        }
    }
}

/// Family-specific labels. Lines are stored by their coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum Parts {
    /// r = 16, 17, 18
    Lines { lines: [Pt; 6] },
    /// r = 15
    ConicLines { conic: Poly, lines: [Pt; 4] },
    /// r = 14; p ∈ C ∩ L₁
    CubicLines { cubic: Poly, lines: [Pt; 3], p: Pt },
    /// r = 13
    CubicConicLine { cubic: Poly, conic: Poly, line: Pt },
    /// r = 12; p ∈ C₁ ∩ C₂
    TwoCubics { c1: Poly, c2: Poly, p: Pt },
    /// r ≤ 11; `nodes` are the assigned rational nodes.
    Irreducible { sextic: Poly, nodes: Vec<Pt> },
}

impl Parts {
    /// Component equations in the order used by the curve.
    pub fn factors(&self) -> Vec<Poly> {
        match self {
            Parts::Lines { lines } => lines.iter().map(geom::line_poly).collect(),
            Parts::ConicLines { conic, lines } => std::iter::once(conic.clone()).chain(lines.iter().map(geom::line_poly)).collect(),
            Parts::CubicLines { cubic, lines, .. } => std::iter::once(cubic.clone()).chain(lines.iter().map(geom::line_poly)).collect(),
            Parts::CubicConicLine { cubic, conic, line } => vec![cubic.clone(), conic.clone(), geom::line_poly(line)],
            Parts::TwoCubics { c1, c2, .. } => vec![c1.clone(), c2.clone()],
            Parts::Irreducible { sextic, .. } => vec![sextic.clone()],
        }
    }

    pub fn to_json(&self) -> Value {
        let lines = |ls: &[Pt]| Value::Array(ls.iter().map(geom::pt_to_json).collect());
        match self {
            Parts::Lines { lines: ls } => json!({"kind": "lines", "lines": lines(ls)}),
            Parts::ConicLines { conic, lines: ls } => json!({"kind": "conic_lines", "conic": conic.to_json(), "lines": lines(ls)}),
            Parts::CubicLines { cubic, lines: ls, p } => {
                json!({"kind": "cubic_lines", "cubic": cubic.to_json(), "lines": lines(ls), "p": geom::pt_to_json(p)})
            }
            Parts::CubicConicLine { cubic, conic, line } => {
                json!({"kind": "cubic_conic_line", "cubic": cubic.to_json(), "conic": conic.to_json(), "line": geom::pt_to_json(line)})
            }
            Parts::TwoCubics { c1, c2, p } => json!({"kind": "two_cubics", "c1": c1.to_json(), "c2": c2.to_json(), "p": geom::pt_to_json(p)}),
            Parts::Irreducible { sextic, nodes } => json!({"kind": "irreducible", "sextic": sextic.to_json(), "nodes": lines(nodes)}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Parts, FamilyError> {
        let bad = |w: &str| FamilyError::Malformed(format!("labeled_parts: {w}"));
        let poly = |k: &str| Poly::from_json(&XYZ, v.get(k).ok_or_else(|| bad(k))?).map_err(|_| bad(k));
        let pt = |k: &str| geom::pt_from_json(v.get(k).ok_or_else(|| bad(k))?).ok_or_else(|| bad(k));
        let pts = |k: &str| -> Result<Vec<Pt>, FamilyError> {
            v.get(k).and_then(Value::as_array).ok_or_else(|| bad(k))?.iter().map(|x| geom::pt_from_json(x).ok_or_else(|| bad(k))).collect()
        };
        let arr = |k: &str, n: usize| -> Result<Vec<Pt>, FamilyError> {
            let p = pts(k)?;
            if p.len() != n {
                return Err(bad(k));
            }
            Ok(p)
        };
        match v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("kind"))? {
            "lines" => Ok(Parts::Lines { lines: arr("lines", 6)?.try_into().unwrap() }),
            "conic_lines" => Ok(Parts::ConicLines { conic: poly("conic")?, lines: arr("lines", 4)?.try_into().unwrap() }),
            "cubic_lines" => Ok(Parts::CubicLines { cubic: poly("cubic")?, lines: arr("lines", 3)?.try_into().unwrap(), p: pt("p")? }),
            "cubic_conic_line" => Ok(Parts::CubicConicLine { cubic: poly("cubic")?, conic: poly("conic")?, line: pt("line")? }),
            "two_cubics" => Ok(Parts::TwoCubics { c1: poly("c1")?, c2: poly("c2")?, p: pt("p")? }),
            "irreducible" => Ok(Parts::Irreducible { sextic: poly("sextic")?, nodes: pts("nodes")? }),
            k => Err(bad(k)),
        }
    }
}

/// Expected data of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub r: u32,
    pub nodes: usize,
    pub triples: usize,
    /// Degrees of the components, in curve order.
    pub recipe: Vec<u32>,
    pub description: &'static str,
    pub marking_rule: &'static str,
    pub invariants: (u32, u32, u32),
}

impl FamilySpec {
    pub fn get(r: u32) -> Result<FamilySpec, FamilyError> {
        let (nodes, triples, recipe, description, marking_rule): (usize, usize, Vec<u32>, &str, &str) = match r {
            18 => (9, 2, vec![1; 6], "six lines, L1L2L3 and L4L5L6 concurrent", "q1 = L1∩L4, q2 = L2∩L5"),
            17 => (12, 1, vec![1; 6], "six lines, L4L5L6 concurrent", "q1 = L1∩L4, q2 = L2∩L5"),
            16 => (15, 0, vec![1; 6], "six lines in general position", "q1 = L1∩L4, q2 = L2∩L5"),
            15 => (14, 0, vec![2, 1, 1, 1, 1], "smooth conic and four lines", "q1 = L1∩L3, q2 = L2∩L4"),
            14 => (13, 0, vec![3, 1, 1, 1], "nodal cubic and three lines", "q1 = p ∈ C∩L1, q2 = L2∩L3"),
            13 => (12, 0, vec![3, 2, 1], "nodal cubic, smooth conic and a line", "q1 ∈ C∩Q, q2 ∈ Q∩L"),
            12 => (11, 0, vec![3, 3], "two nodal cubics", "q1 = p ∈ C1∩C2, q2 = Sing(C2)"),
            11 => (10, 0, vec![6], "Coble curve (rational 10-nodal sextic)", "two nodes"),
            3..=10 => (r as usize - 1, 0, vec![6], "irreducible nodal sextic", "two nodes"),
            _ => return Err(FamilyError::BadLabel(r)),
        };
        Ok(FamilySpec { r, nodes, triples, recipe, description, marking_rule, invariants: expected_invariants(r) })
    }

    /// r = 1 + #nodes + 4·#triples
    pub fn rank_rule(&self) -> u32 {
        1 + self.nodes as u32 + 4 * self.triples as u32
    }
}

/// The (r, a, δ) stated for each family.
pub fn expected_invariants(r: u32) -> (u32, u32, u32) {
    match r {
        18 => (18, 4, 0),
        17 => (17, 5, 1),
        16 => (16, 6, 1),
        15 => (15, 7, 1),
        14 => (14, 8, 1),
        13 => (13, 9, 1),
        12 => (12, 10, 1),
        11 => (11, 11, 1),
        _ => (r, r, 1),
    }
}

/// A plane sextic with family label and weak (optionally strong) marking.
#[derive(Debug)]
pub struct MarkedSextic {
    pub r: u32,
    pub curve: PlaneCurve,
    pub parts: Parts,
    pub q1: Pt,
    pub q2: Pt,
    pub strong: Option<Branch>,
    pub seed: u64,
    locus: OnceLock<Arc<Result<SingularLocus, CurveError>>>,
}

impl Clone for MarkedSextic {
    fn clone(&self) -> Self {
        let locus = OnceLock::new();
        if let Some(l) = self.locus.get() {
            let _ = locus.set(l.clone());
        }
        MarkedSextic { r: self.r, curve: self.curve.clone(), parts: self.parts.clone(), q1: self.q1.clone(), q2: self.q2.clone(), strong: self.strong, seed: self.seed, locus }
    }
}

impl PartialEq for MarkedSextic {
    fn eq(&self, o: &Self) -> bool {
        self.r == o.r && self.curve == o.curve && self.parts == o.parts && self.q1 == o.q1 && self.q2 == o.q2 && self.strong == o.strong && self.seed == o.seed
    }
}

impl MarkedSextic {
    pub fn new(r: u32, parts: Parts, q1: Pt, q2: Pt, seed: u64) -> Result<MarkedSextic, FamilyError> {
        let curve = PlaneCurve::from_components(parts.factors())?;
        if curve.degree() != 6 {
            return Err(FamilyError::Malformed(format!("degree {} ≠ 6", curve.degree())));
        }
        Ok(MarkedSextic { r, curve, parts, q1: geom::normalize(&q1), q2: geom::normalize(&q2), strong: None, seed, locus: OnceLock::new() })
    }

    pub fn with_strong(mut self, b: Option<Branch>) -> Self {
        self.strong = b;
        self
    }

    /// Certified singular locus, computed once.
    pub fn locus(&self) -> Result<&SingularLocus, CurveError> {
        let l = self.locus.get_or_init(|| Arc::new(singular_locus_certified(&self.curve, self.seed ^ 0x5eed)));
        match l.as_ref() {
            Ok(l) => Ok(l),
            Err(e) => Err(e.clone()),
        }
    }

    /// The line through q₁ and q₂.
    pub fn marking_line(&self) -> Pt {
        geom::normalize(&geom::line_through(&self.q1, &self.q2))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "curve": self.curve.to_json(),
            "labeled_parts": self.parts.to_json(),
            "weak_marking": [geom::pt_to_json(&self.q1), geom::pt_to_json(&self.q2)],
            "strong_marking": self.strong.map(|b| Value::from(b.token())).unwrap_or(Value::Null),
            "seed": self.seed,
        })
    }

    pub fn from_json(v: &Value) -> Result<MarkedSextic, FamilyError> {
        let bad = |w: &str| FamilyError::Malformed(w.to_string());
        let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("r"))? as u32;
        let parts = Parts::from_json(v.get("labeled_parts").ok_or_else(|| bad("labeled_parts"))?)?;
        let wm = v.get("weak_marking").and_then(Value::as_array).ok_or_else(|| bad("weak_marking"))?;
        if wm.len() != 2 {
            return Err(bad("weak_marking"));
        }
        let q1 = geom::pt_from_json(&wm[0]).ok_or_else(|| bad("q1"))?;
        let q2 = geom::pt_from_json(&wm[1]).ok_or_else(|| bad("q2"))?;
        let strong = match v.get("strong_marking") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(Branch::from_token(s).ok_or_else(|| bad("strong_marking"))?),
            _ => return Err(bad("strong_marking")),
        };
        let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
        let ms = MarkedSextic::new(r, parts, q1, q2, seed)?.with_strong(strong);
        if let Some(c) = v.get("curve") {
            let declared = PlaneCurve::from_json(c).map_err(|e| bad(&e.to_string()))?;
            if declared.equation() != ms.curve.equation() {
                return Err(bad("curve does not match labeled_parts"));
            }
        }
        Ok(ms)
    }
}
