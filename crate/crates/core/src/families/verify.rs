//! Family membership and the genericity condition on the line q₁q₂.

use super::{FamilySpec, MarkedSextic, Parts};
use crate::curves::geom::{self, Pt};
use crate::curves::{certify_irreducible, restrict_to_line, singular_locus, LineRestriction, PlaneCurve, SingKind};
use crate::exactmath::linalg;
use crate::exactmath::poly::Poly;
use crate::exactmath::rational::{self, Rational};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub r: u32,
    pub clauses: Vec<Clause>,
}

impl MembershipReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
    pub fn failures(&self) -> Vec<String> {
        self.clauses.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail)).collect()
    }
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "pass": self.pass(),
            "clauses": self.clauses.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn clause(name: &'static str, res: Result<String, String>) -> Clause {
    match res {
        Ok(d) => Clause { name, pass: true, detail: d },
        Err(d) => Clause { name, pass: false, detail: d },
    }
}

pub fn verify_membership(ms: &MarkedSextic) -> MembershipReport {
    let mut clauses = vec![];
    let spec = match FamilySpec::get(ms.r) {
        Ok(s) => s,
        Err(e) => return MembershipReport { r: ms.r, clauses: vec![clause("label", Err(e.to_string()))] },
    };
    clauses.push(clause("components", check_components(ms, &spec)));
    clauses.push(clause("census", check_census(ms, &spec)));
    clauses.push(clause("concurrency", check_concurrency(ms)));
    clauses.push(clause("marking", check_marking(ms)));
    MembershipReport { r: ms.r, clauses }
}

fn kind_matches(r: u32, parts: &Parts) -> bool {
    matches!(
        (r, parts),
        (16..=18, Parts::Lines { .. })
            | (15, Parts::ConicLines { .. })
            | (14, Parts::CubicLines { .. })
            | (13, Parts::CubicConicLine { .. })
            | (12, Parts::TwoCubics { .. })
            | (3..=11, Parts::Irreducible { .. })
    )
}

fn conic_matrix(q: &Poly) -> Vec<Vec<Rational>> {
    let half = rational::qf(1, 2);
    let mut m = vec![vec![Rational::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = q.coeff(&e);
            m[i][j] = if i == j { c } else { c * half.clone() };
        }
    }
    m
}

pub(crate) fn is_smooth_conic(q: &Poly) -> bool {
    q.total_degree() == Some(2) && !linalg::det(&conic_matrix(q)).is_zero()
}

/// Irreducible cubic with exactly one singular point, a node.
pub(crate) fn is_nodal_cubic(c: &Poly, seed: u64) -> Result<Pt, String> {
    if c.total_degree() != Some(3) {
        return Err("not a cubic".into());
    }
    if !certify_irreducible(c, seed) {
        return Err("cubic not certified irreducible".into());
    }
    let curve = PlaneCurve::from_equation(c.clone()).map_err(|e| e.to_string())?;
    let sing = singular_locus(&curve).map_err(|e| e.to_string())?;
    match sing.as_slice() {
        [p] if p.kind == SingKind::Node => p.location.as_rational().cloned().ok_or_else(|| "irrational node".into()),
        _ => Err(format!("cubic has {} singular point sets, expected one node", sing.len())),
    }
}

fn check_components(ms: &MarkedSextic, spec: &FamilySpec) -> Result<String, String> {
    if !kind_matches(ms.r, &ms.parts) {
        return Err(format!("labeled parts do not fit family {}", ms.r));
    }
    let factors = ms.parts.factors();
    let degs: Vec<u32> = factors.iter().map(|f| f.total_degree().unwrap_or(0)).collect();
    if degs != spec.recipe {
        return Err(format!("component degrees {degs:?}, expected {:?}", spec.recipe));
    }
    for (i, f) in factors.iter().enumerate() {
        let ok = match degs[i] {
            1 => Ok(()),
            2 => if is_smooth_conic(f) { Ok(()) } else { Err("conic is singular".to_string()) },
            3 => is_nodal_cubic(f, ms.seed.wrapping_add(i as u64)).map(|_| ()),
            _ => if certify_irreducible(f, ms.seed) { Ok(()) } else { Err("sextic not certified irreducible".to_string()) },
        };
        ok.map_err(|e| format!("component {i}: {e}"))?;
    }
    for i in 0..factors.len() {
        for j in 0..i {
            if factors[i].primitive() == factors[j].primitive() || factors[i].primitive() == -factors[j].primitive() {
                return Err(format!("components {j} and {i} coincide"));
            }
        }
    }
    Ok(format!("degrees {degs:?}"))
}

fn check_census(ms: &MarkedSextic, spec: &FamilySpec) -> Result<String, String> {
    let loc = ms.locus().map_err(|e| e.to_string())?;
    let (n, t, o) = (loc.count(SingKind::Node), loc.count(SingKind::OrdinaryTriple), loc.count(SingKind::Other));
    if o > 0 || loc.elimination_milnor != loc.classified_milnor {
        return Err(format!("{o} unsupported singular points"));
    }
    if (n, t) != (spec.nodes, spec.triples) {
        return Err(format!("{n} nodes + {t} triples, expected {} + {}", spec.nodes, spec.triples));
    }
    Ok(format!("{n} nodes + {t} triples, rank rule r = {}", 1 + n + 4 * t))
}

fn check_concurrency(ms: &MarkedSextic) -> Result<String, String> {
    if !matches!(ms.parts, Parts::Lines { .. }) {
        return Ok("no line triples required".into());
    }
    let loc = ms.locus().map_err(|e| e.to_string())?;
    let found: BTreeSet<Vec<usize>> = loc.points.iter().filter(|p| p.kind == SingKind::OrdinaryTriple).map(|p| p.components.clone()).collect();
    let want: BTreeSet<Vec<usize>> = match ms.r {
        18 => [vec![0, 1, 2], vec![3, 4, 5]].into_iter().collect(),
        17 => [vec![3, 4, 5]].into_iter().collect(),
        _ => BTreeSet::new(),
    };
    if found != want {
        return Err(format!("concurrent triples {found:?}, expected {want:?}"));
    }
    Ok(format!("concurrent triples {found:?}"))
}

fn is_rational_node(ms: &MarkedSextic, q: &Pt) -> bool {
    ms.locus().map(|l| l.points.iter().any(|p| p.kind == SingKind::Node && p.location.is_point(q))).unwrap_or(false)
}

fn on(f: &Poly, p: &Pt) -> bool {
    f.eval(p).is_zero()
}

fn on_line(l: &Pt, p: &Pt) -> bool {
    geom::dot(l, p).is_zero()
}

fn is_singular_at(f: &Poly, p: &Pt) -> bool {
    (0..3).all(|i| f.diff(i).eval(p).is_zero())
}

fn check_marking(ms: &MarkedSextic) -> Result<String, String> {
    let (q1, q2) = (&ms.q1, &ms.q2);
    if geom::same_point(q1, q2) {
        return Err("q1 = q2".into());
    }
    if !is_rational_node(ms, q1) || !is_rational_node(ms, q2) {
        return Err("q1 and q2 must be nodes of the curve".into());
    }
    let meet = |a: &Pt, b: &Pt| geom::normalize(&geom::meet(a, b));
    let rule = match &ms.parts {
        Parts::Lines { lines: l } => geom::same_point(q1, &meet(&l[0], &l[3])) && geom::same_point(q2, &meet(&l[1], &l[4])),
        Parts::ConicLines { lines: l, .. } => geom::same_point(q1, &meet(&l[0], &l[2])) && geom::same_point(q2, &meet(&l[1], &l[3])),
        Parts::CubicLines { cubic, lines: l, p } => {
            geom::same_point(q1, p) && on(cubic, p) && on_line(&l[0], p) && geom::same_point(q2, &meet(&l[1], &l[2]))
        }
        Parts::CubicConicLine { cubic, conic, line } => on(cubic, q1) && on(conic, q1) && on(conic, q2) && on_line(line, q2),
        Parts::TwoCubics { c1, c2, p } => geom::same_point(q1, p) && on(c1, p) && on(c2, p) && is_singular_at(c2, q2),
        Parts::Irreducible { .. } => true,
    };
    if !rule {
        return Err(format!("marking violates the r = {} rule", ms.r));
    }
    Ok(format!("q1 = {}, q2 = {}", geom::pt_to_json(q1), geom::pt_to_json(q2)))
}

/// Outcome of the genericity test on the line through q₁, q₂.
#[derive(Clone, Debug)]
pub struct Genericity {
    pub pass: bool,
    pub line: Pt,
    pub restriction: Option<LineRestriction>,
    pub detail: String,
}

impl Genericity {
    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "line": geom::pt_to_json(&self.line),
            "pattern": self.restriction.as_ref().map(|r| r.pattern()),
            "detail": self.detail,
        })
    }
}

/// L = q₁q₂ meets the curve in q₁, q₂ (multiplicity 2 each) and two further smooth points.
pub fn check_genericity(ms: &MarkedSextic) -> Genericity {
    let line = ms.marking_line();
    let res = match restrict_to_line(&ms.curve, &line) {
        Ok(r) => r,
        Err(e) => return Genericity { pass: false, line, restriction: None, detail: e.to_string() },
    };
    let pat = res.pattern();
    let (m1, m2) = (res.multiplicity_at(&ms.q1), res.multiplicity_at(&ms.q2));
    let pass = pat == vec![2, 2, 1, 1] && m1 == 2 && m2 == 2;
    let detail = format!("pattern {pat:?}, mult at q1 = {m1}, at q2 = {m2}");
    Genericity { pass, line, restriction: Some(res), detail }
}
