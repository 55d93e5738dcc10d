use super::paths::sample_fiber;
use super::{DegenError, DegenerationPath};
use crate::curves::{geom, SingKind};
use crate::exactmath::{linalg, rational, Rational};
use crate::families::{expected_invariants, verify_membership, MarkedSextic};
use crate::lattice::{build_resolution, invariant_lattice, lattice_invariants, Exceptional, ResolutionModel};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleCheck {
    pub t: Rational,
    pub membership: bool,
    pub genericity: bool,
    /// (nodes, triple points) of the fiber.
    pub census: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquisingularReport {
    pub samples: Vec<SampleCheck>,
    pub boundary_membership: bool,
    pub warning: Option<String>,
}

impl EquisingularReport {
    /// All samples pass; vacuous for an empty list.
    pub fn samples_pass(&self) -> bool {
        self.samples.iter().all(|s| s.membership && s.genericity)
    }
    pub fn pass(&self) -> bool {
        self.samples_pass() && self.boundary_membership
    }
    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "samples": self.samples.iter().map(|s| json!({
                "t": rational::to_string(&s.t),
                "membership": s.membership,
                "genericity": s.genericity,
                "census": s.census.map(|c| [c.0, c.1]),
                "detail": s.detail,
            })).collect::<Vec<_>>(),
            "boundary_membership": self.boundary_membership,
            "warning": self.warning,
        })
    }
}

fn census(ms: &MarkedSextic) -> Option<(usize, usize)> {
    ms.locus().ok().map(|l| (l.count(SingKind::Node), l.count(SingKind::OrdinaryTriple)))
}

/// Membership in family r and genericity of every sampled fiber, plus
/// membership of the boundary fiber in family r + 1.
pub fn verify_equisingular(path: &DegenerationPath, samples: &[Rational]) -> EquisingularReport {
    let mut out = vec![];
    for t in samples {
        if t.is_zero() {
            out.push(SampleCheck { t: t.clone(), membership: false, genericity: false, census: None, detail: "t = 0 is the boundary".into() });
            continue;
        }
        let cached = path.samples.iter().find(|s| &s.t == t).map(|s| s.fiber.clone());
        let res = match cached {
            Some(f) => Ok(f),
            None => sample_fiber(path, t),
        };
        out.push(match res {
            Ok(f) => SampleCheck { t: t.clone(), membership: true, genericity: true, census: census(&f), detail: "ok".into() },
            Err(e) => {
                let membership = path.fiber(t).map(|f| verify_membership(&f).pass()).unwrap_or(false);
                SampleCheck { t: t.clone(), membership, genericity: false, census: path.fiber(t).ok().as_ref().and_then(census), detail: e }
            }
        });
    }
    let warning = if samples.is_empty() { Some("no samples: equisingularity holds vacuously".to_string()) } else { None };
    EquisingularReport { samples: out, boundary_membership: verify_membership(&path.boundary).pass(), warning }
}

/// lim_{t→0} qᵢ(t) equals the boundary marking, which itself obeys the r + 1 rule.
pub fn boundary_marking_agrees(path: &DegenerationPath) -> Result<bool, DegenError> {
    let (a, b) = (path.q1.limit_at_zero()?, path.q2.limit_at_zero()?);
    let rule = verify_membership(&path.boundary).clauses.iter().find(|c| c.name == "marking").map(|c| c.pass).unwrap_or(false);
    Ok(rule && geom::same_point(&a, &path.boundary.q1) && geom::same_point(&b, &path.boundary.q2))
}

/// Classes of the generic resolution model written in the boundary model.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationMap {
    pub generic_symbols: Vec<String>,
    pub boundary_symbols: Vec<String>,
    /// Image of each generic basis class, in boundary coordinates.
    pub images: Vec<Vec<Rational>>,
    /// Boundary classes orthogonal to the image: one node class, or the
    /// central class e − f₁ − f₂ − f₃ of a new triple point.
    pub new_classes: Vec<Vec<i64>>,
    /// 1 for a new node, 4 for a new triple-point block.
    pub new_block: usize,
    pub rank_generic: usize,
    pub rank_boundary: usize,
    pub branch_relations: bool,
    pub marking_preserved: bool,
    pub h_plus_integral: bool,
    pub generic_invariants: (u32, u32, u32),
    pub boundary_invariants: (u32, u32, u32),
}

impl SpecializationMap {
    pub fn rank_jump(&self) -> usize {
        self.rank_boundary - self.rank_generic
    }
    pub fn pass(&self, r: u32) -> bool {
        self.rank_jump() == 1
            && self.branch_relations
            && self.marking_preserved
            && self.h_plus_integral
            && self.generic_invariants == expected_invariants(r)
            && self.boundary_invariants == expected_invariants(r + 1)
    }
    pub fn to_json(&self, r: u32) -> Value {
        let q = |v: &Vec<Rational>| v.iter().map(rational::to_string).collect::<Vec<_>>();
        json!({
            "pass": self.pass(r),
            "gram_preserved": true,
            "generic_basis": self.generic_symbols,
            "boundary_basis": self.boundary_symbols,
            "images": self.images.iter().map(q).collect::<Vec<_>>(),
            "new_classes": self.new_classes,
            "new_block": self.new_block,
            "rank": [self.rank_generic, self.rank_boundary],
            "branch_relations": self.branch_relations,
            "marking_preserved": self.marking_preserved,
            "h_plus_integral": self.h_plus_integral,
            "generic_invariants": [self.generic_invariants.0, self.generic_invariants.1, self.generic_invariants.2],
            "boundary_invariants": [self.boundary_invariants.0, self.boundary_invariants.1, self.boundary_invariants.2],
        })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = a[0].clone() * b[0].clone();
    for i in 1..a.len() {
        acc -= a[i].clone() * b[i].clone();
    }
    acc
}

fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational::q(x)).collect()
}

/// For each exceptional index, the set of (mapped) components through it.
fn keys(m: &ResolutionModel, comp_to_key: &dyn Fn(usize) -> usize) -> Vec<BTreeSet<usize>> {
    (0..m.rank())
        .map(|i| m.branch.iter().filter(|b| b.component.is_some() && b.class[i] != 0 && i > 0).map(|b| comp_to_key(b.component.unwrap())).collect())
        .collect()
}

/// The component owning a triple-point direction class.
fn direction_component(m: &ResolutionModel, j: usize) -> Option<usize> {
    m.branch.iter().find(|b| b.component.is_some() && b.class[j] != 0).and_then(|b| b.component)
}

pub fn lattice_specialization(path: &DegenerationPath) -> Result<SpecializationMap, DegenError> {
    let generic = path.samples.first().map(|s| s.fiber.clone()).ok_or_else(|| DegenError::Degenerate("no sample fiber".into()))?;
    let gm = build_resolution(&generic)?;
    let bm = build_resolution(&path.boundary)?;
    let (n, m) = (gm.rank(), bm.rank());
    let nb = path.boundary.curve.components().len();
    let mut gen_of = vec![usize::MAX; nb];
    for (c, targets) in path.component_map.iter().enumerate() {
        for &k in targets {
            gen_of[k] = c;
        }
    }
    if gen_of.contains(&usize::MAX) {
        return Err(DegenError::Gram("component map does not cover the boundary".into()));
    }
    let gkeys = keys(&gm, &|c| c);
    let bkeys = keys(&bm, &|k| gen_of[k]);

    let unit = |i: usize| -> Vec<Rational> { (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect() };
    let mut images: Vec<Option<Vec<Rational>>> = vec![None; n];
    let mut used = vec![false; m];
    images[0] = Some(unit(0));
    used[0] = true;

    // triple blocks present on both sides
    for (i, x) in gm.exceptional.iter().enumerate() {
        if let Exceptional::TripleCenter { point } = x {
            let j = bm
                .exceptional
                .iter()
                .position(|y| matches!(y, Exceptional::TripleCenter { point: p } if geom::same_point(p, point)))
                .ok_or_else(|| DegenError::Gram("a triple point disappears at the boundary".into()))?;
            let (gi, bj) = (i + 1, j + 1);
            images[gi] = Some(unit(bj));
            used[bj] = true;
            for d in 1..=3 {
                let tan = match &gm.exceptional[i + d] {
                    Exceptional::TripleDirection { tangent, .. } => tangent.clone(),
                    _ => return Err(DegenError::Gram("malformed triple block".into())),
                };
                let e = (1..=3)
                    .find(|&e| matches!(&bm.exceptional[j + e], Exceptional::TripleDirection { tangent, .. } if geom::same_point(tangent, &tan)))
                    .ok_or_else(|| DegenError::Gram("tangent directions differ".into()))?;
                images[gi + d] = Some(unit(bj + e));
                used[bj + e] = true;
            }
        }
    }

    // marked nodes
    for (gi, bj) in [(gm.q1_index, bm.q1_index), (gm.q2_index, bm.q2_index)] {
        if gkeys[gi] != bkeys[bj] {
            return Err(DegenError::Gram(format!("marked node {} lies on different components at the boundary", gm.symbols[gi])));
        }
        images[gi] = Some(unit(bj));
        used[bj] = true;
    }

    let node_at = |m: &ResolutionModel, i: usize| match &m.exceptional[i - 1] {
        Exceptional::Node { location, .. } => Some(location.clone()),
        _ => None,
    };
    // nodes: same location first, then any node over the same components
    for gi in 1..n {
        if images[gi].is_some() {
            continue;
        }
        let Some(loc) = node_at(&gm, gi) else { continue };
        let candidates: Vec<usize> = (1..m).filter(|&j| !used[j] && bkeys[j] == gkeys[gi] && node_at(&bm, j).is_some()).collect();
        let same = loc.as_rational().and_then(|p| candidates.iter().copied().find(|&j| node_at(&bm, j).map(|l| l.is_point(p)).unwrap_or(false)));
        if let Some(j) = same.or_else(|| candidates.first().copied()) {
            images[gi] = Some(unit(j));
            used[j] = true;
        }
    }
    // remaining nodes merge into a new triple point: e_ab ↦ (e + f_a + f_b − f_c)/2
    let half = rational::qf(1, 2);
    let mut triple_new = BTreeSet::new();
    for gi in 1..n {
        if images[gi].is_some() {
            continue;
        }
        let key = &gkeys[gi];
        let mut found = None;
        for (j, y) in bm.exceptional.iter().enumerate() {
            if !matches!(y, Exceptional::TripleCenter { .. }) || used[j + 1] {
                continue;
            }
            let dirs: Vec<(usize, usize)> = (1..=3).filter_map(|e| direction_component(&bm, j + 1 + e).map(|k| (j + 1 + e, gen_of[k]))).collect();
            let comps: BTreeSet<usize> = dirs.iter().map(|d| d.1).collect();
            if dirs.len() == 3 && comps.len() == 3 && key.len() == 2 && key.is_subset(&comps) {
                let mut v = unit(j + 1);
                for (idx, c) in &dirs {
                    v[*idx] = if key.contains(c) { Rational::one() } else { -Rational::one() };
                }
                found = Some((j + 1, v.into_iter().map(|x| x * half.clone()).collect::<Vec<_>>()));
                break;
            }
        }
        let (c, v) = found.ok_or_else(|| DegenError::Gram(format!("no boundary class for {}", gm.symbols[gi])))?;
        triple_new.insert(c);
        images[gi] = Some(v);
    }
    let images: Vec<Vec<Rational>> = images.into_iter().map(Option::unwrap).collect();

    // Gram preservation
    let g = gm.gram();
    for i in 0..n {
        for j in i..n {
            if dot(&images[i], &images[j]) != rational::qi(g[(i, j)].clone()) {
                return Err(DegenError::Gram(format!("⟨{}, {}⟩ changes", gm.symbols[i], gm.symbols[j])));
            }
        }
    }

    let mut new_classes: Vec<Vec<i64>> = vec![];
    for &c in &triple_new {
        let mut v = vec![0i64; m];
        v[c] = 1;
        for e in 1..=3 {
            v[c + e] = -1;
        }
        new_classes.push(v);
        for e in 0..=3 {
            used[c + e] = true;
        }
    }
    for j in 1..m {
        if !used[j] {
            let mut v = vec![0i64; m];
            v[j] = 1;
            new_classes.push(v);
        }
    }
    let new_block = match (triple_new.len(), new_classes.len()) {
        (0, 1) => 1,
        (1, 1) => 4,
        _ => return Err(DegenError::Gram(format!("{} new classes at the boundary", new_classes.len()))),
    };
    for v in &new_classes {
        if images.iter().any(|x| !dot(x, &qv(v)).is_zero()) {
            return Err(DegenError::Gram("new class meets the image".into()));
        }
    }

    let apply = |x: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); m];
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                for j in 0..m {
                    out[j] += a.clone() * images[i][j].clone();
                }
            }
        }
        out
    };

    // image(C) − Σ (pieces of C) is an even combination of new classes
    let mut branch_relations = true;
    for b in gm.branch.iter().filter(|b| b.component.is_some()) {
        let c = b.component.unwrap();
        let mut diff = apply(&qv(&b.class));
        for bb in bm.branch.iter().filter(|x| x.component.map(|k| gen_of[k] == c).unwrap_or(false)) {
            for j in 0..m {
                diff[j] -= rational::q(bb.class[j]);
            }
        }
        let mut rest = diff.clone();
        for v in &new_classes {
            let vq = qv(v);
            let k = dot(&diff, &vq) / dot(&vq, &vq);
            if !k.is_integer() || !(k.to_integer() % 2u32).is_zero() {
                branch_relations = false;
            }
            for j in 0..m {
                rest[j] -= k.clone() * vq[j].clone();
            }
        }
        if rest.iter().any(|x| !x.is_zero()) {
            branch_relations = false;
        }
    }

    let gmk = gm.marking_classes();
    let bmk = bm.marking_classes();
    let marking_preserved = (0..3).all(|k| apply(&qv(&gmk[k])) == qv(&bmk[k]));

    let gl = invariant_lattice(&gm)?;
    let bl = invariant_lattice(&bm)?;
    let bt: Vec<Vec<Rational>> = (0..m).map(|j| (0..m).map(|i| bl.basis[i][j].clone()).collect()).collect();
    let h_plus_integral = gl.basis.iter().all(|v| linalg::solve(&bt, &apply(v)).map(|c| c.iter().all(|x| x.is_integer())).unwrap_or(false));

    let inv = |l| lattice_invariants(l).map(|i| i.triple());
    Ok(SpecializationMap {
        generic_symbols: gm.symbols.clone(),
        boundary_symbols: bm.symbols.clone(),
        images,
        new_classes,
        new_block,
        rank_generic: gl.rank(),
        rank_boundary: bl.rank(),
        branch_relations,
        marking_preserved,
        h_plus_integral,
        generic_invariants: inv(&gl)?,
        boundary_invariants: inv(&bl)?,
    })
}

/// All path checks at the stored samples.
#[derive(Clone, Debug)]
pub struct PathReport {
    pub equisingular: EquisingularReport,
    pub boundary_fiber: bool,
    pub marking: Result<bool, DegenError>,
    pub lattice: Result<SpecializationMap, DegenError>,
}

impl PathReport {
    pub fn pass(&self, r: u32) -> bool {
        self.equisingular.pass()
            && self.boundary_fiber
            && matches!(self.marking, Ok(true))
            && self.lattice.as_ref().map(|l| l.pass(r)).unwrap_or(false)
    }
    pub fn to_json(&self, r: u32) -> Value {
        json!({
            "pass": self.pass(r),
            "equisingular": self.equisingular.to_json(),
            "boundary_fiber": self.boundary_fiber,
            "marking_limit": match &self.marking { Ok(b) => json!(b), Err(e) => json!({"error": e.to_string()}) },
            "lattice_specialization": match &self.lattice { Ok(l) => l.to_json(r), Err(e) => json!({"pass": false, "error": e.to_string()}) },
        })
    }
}

pub fn path_report(path: &DegenerationPath) -> PathReport {
    let ts: Vec<Rational> = path.samples.iter().map(|s| s.t.clone()).collect();
    PathReport {
        equisingular: verify_equisingular(path, &ts),
        boundary_fiber: path.boundary_fiber_matches(),
        marking: boundary_marking_agrees(path),
        lattice: lattice_specialization(path),
    }
}
