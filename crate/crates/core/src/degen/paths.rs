//! Recipes: each starts from a certified member of family r + 1 and moves
//! one recipe parameter linearly in t so that t = 0 gives that member back.

use super::coble::CubicMap;
use super::{lift_t, CurveFamily, DegenError, DegenerationPath, PointFamily, Sample, XYZT};
use crate::curves::{geom, PointSet, Pt, SingKind};
use crate::exactmath::poly::Poly;
use crate::exactmath::{rational, Rational, UniPoly};
use crate::families::construct::{forms_with, forms_with_sets, rand_point, random_member};
use crate::families::{check_genericity, generate_instance, verify_membership, MarkedSextic, Parts};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct PathOptions {
    /// Height of the random perturbation data.
    pub height: i64,
    pub max_attempts: usize,
    /// Multipliers tried in turn on the base samples 1, 1/2, 1/3, 1/5, 1/7.
    pub sample_scales: Vec<Rational>,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions { height: 5, max_attempts: 12, sample_scales: vec![rational::q(1), rational::qf(1, 4), rational::qf(1, 17)] }
    }
}

pub fn base_samples() -> Vec<Rational> {
    [1, 2, 3, 5, 7].iter().map(|&d| rational::qf(1, d)).collect()
}

pub fn build_degeneration(r: u32, seed: u64) -> Result<DegenerationPath, DegenError> {
    build_degeneration_with(r, seed, &PathOptions::default())
}

pub fn build_degeneration_with(r: u32, seed: u64, opts: &PathOptions) -> Result<DegenerationPath, DegenError> {
    if !(3..=17).contains(&r) {
        return Err(DegenError::BadLabel(r));
    }
    let mut last = String::new();
    for attempt in 0..opts.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((r as u64) << 40) ^ 0xde9e ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let bseed = seed.wrapping_add(attempt as u64 * 7919);
        let mut path = match recipe(r, bseed, opts.height.max(2), &mut rng) {
            Ok(p) => p,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let rep = verify_membership(&path.boundary);
        if !rep.pass() {
            last = format!("boundary: {}", rep.failures().join("; "));
            continue;
        }
        if !check_genericity(&path.boundary).pass {
            last = "boundary marking not generic".into();
            continue;
        }
        if !path.boundary_fiber_matches() {
            last = "t = 0 fiber differs from the boundary curve".into();
            continue;
        }
        match pick_samples(&path, opts) {
            Ok(s) => {
                path.samples = s;
                return Ok(path);
            }
            Err(e) => last = e,
        }
    }
    Err(DegenError::RetryExhausted { attempts: opts.max_attempts, last })
}

/// Scaled base samples whose fibers are certified members of family r.
fn pick_samples(path: &DegenerationPath, opts: &PathOptions) -> Result<Vec<Sample>, String> {
    let mut last = String::new();
    'scale: for c in &opts.sample_scales {
        let mut out = vec![];
        for t in base_samples() {
            let t = t * c.clone();
            match sample_fiber(path, &t) {
                Ok(f) => out.push(Sample { t, fiber: f }),
                Err(e) => {
                    last = format!("t = {t}: {e}");
                    continue 'scale;
                }
            }
        }
        return Ok(out);
    }
    Err(format!("no sample scale works; {last}"))
}

pub(crate) fn sample_fiber(path: &DegenerationPath, t: &Rational) -> Result<MarkedSextic, String> {
    let f = path.fiber(t).map_err(|e| e.to_string())?;
    let rep = verify_membership(&f);
    if !rep.pass() {
        return Err(rep.failures().join("; "));
    }
    let g = check_genericity(&f);
    if !g.pass {
        return Err(format!("genericity: {}", g.detail));
    }
    Ok(f)
}

type Built = Result<DegenerationPath, String>;

fn recipe(r: u32, seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    match r {
        17 => move_line(17, seed, h, rng),
        16 => move_line(16, seed, h, rng),
        15 => split_conic_into_lines(seed, h, rng),
        14 => split_cubic_into_conic_and_line(seed, h, rng),
        13 => split_conic_into_two_lines(seed, h, rng),
        12 => split_second_cubic(seed, h, rng),
        11 => coble_to_two_cubics(seed, h, rng),
        10 => halphen_to_coble(seed, h, rng),
        _ => add_node(r, seed, h, rng),
    }
}

fn boundary(r: u32, seed: u64) -> Result<MarkedSextic, String> {
    generate_instance(r, seed).map_err(|e| e.to_string())
}

fn tvar() -> Poly {
    Poly::var(&XYZT, 3)
}

fn lin(l: &Pt) -> Poly {
    lift_t(&geom::line_poly(l))
}

fn meet(a: &Pt, b: &Pt) -> Pt {
    geom::normalize(&geom::meet(a, b))
}

fn constant(p: &Pt) -> PointFamily {
    PointFamily::constant(p)
}

/// f₀ + t·f₁
fn pencil(f0: &Poly, f1: &Poly) -> Poly {
    &lift_t(f0) + &(&tvar() * &lift_t(f1))
}

fn member(rng: &mut ChaCha8Rng, basis: &[Poly], h: i64) -> Result<Poly, String> {
    random_member(rng, basis, h).ok_or_else(|| "empty linear system".to_string())
}

fn identity_map(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i]).collect()
}

/// Rational points of a conic on a line.
fn conic_on_line(q: &Poly, l: &Pt) -> Vec<Pt> {
    let (a, b) = geom::line_points(l);
    let at = |s: i64| q.eval(&geom::add(&a, &geom::scale(&rational::q(s), &b)));
    let (f0, f1, fm) = (at(0), at(1), at(-1));
    let half = rational::qf(1, 2);
    let c2 = (f1.clone() + fm.clone()) * half.clone() - f0.clone();
    let c1 = (f1 - fm) * half;
    let mut out: Vec<Pt> = UniPoly::new(vec![f0, c1, c2.clone()]).rational_roots().iter().map(|s| geom::normalize(&geom::add(&a, &geom::scale(s, &b)))).collect();
    if c2.is_zero() {
        out.push(geom::normalize(&b));
    }
    out
}

fn lines_of(ms: &MarkedSextic) -> Result<[Pt; 6], String> {
    match &ms.parts {
        Parts::Lines { lines } => Ok(lines.clone()),
        _ => Err("expected six lines".into()),
    }
}

/// r = 17: L₃ + t·M (L₁L₂L₃ concurrent at 0); r = 16: L₆ + t·M (L₄L₅L₆).
fn move_line(r: u32, seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(r + 1, seed)?;
    let l = lines_of(&b)?;
    let (k, p) = if r == 17 { (2, meet(&l[0], &l[1])) } else { (5, meet(&l[3], &l[4])) };
    let m = loop {
        let m = rand_point(rng, h);
        if !geom::dot(&m, &p).is_zero() && !geom::same_point(&m, &l[k]) {
            break m;
        }
    };
    let components = (0..6).map(|i| if i == k { &lin(&l[i]) + &(&tvar() * &lin(&m)) } else { lin(&l[i]) }).collect();
    let moved = if r == 17 { "L3" } else { "L6" };
    Ok(DegenerationPath {
        r,
        family: CurveFamily { components, points: vec![] },
        q1: constant(&meet(&l[0], &l[3])),
        q2: constant(&meet(&l[1], &l[4])),
        boundary: b,
        samples: vec![],
        component_map: identity_map(6),
        smoothed: None,
        unresolved: None,
        recipe: format!("{moved}(t) = {moved} + t·M with M off the triple point"),
    })
}

/// r = 15: Q(t) = L₃L₆ + t·G; lines (L₁, L₂, L₄, L₅).
fn split_conic_into_lines(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(16, seed)?;
    let l = lines_of(&b)?;
    let g = member(rng, &forms_with(2, &[], &[]), h)?;
    let q = pencil(&(&geom::line_poly(&l[2]) * &geom::line_poly(&l[5])), &g);
    Ok(DegenerationPath {
        r: 15,
        family: CurveFamily { components: vec![q, lin(&l[0]), lin(&l[1]), lin(&l[3]), lin(&l[4])], points: vec![] },
        q1: constant(&meet(&l[0], &l[3])),
        q2: constant(&meet(&l[1], &l[4])),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![2, 5], vec![0], vec![1], vec![3], vec![4]],
        smoothed: Some(meet(&l[2], &l[5])),
        unresolved: None,
        recipe: "Q(t) = L3·L6 + t·G".into(),
    })
}

/// r = 14: C(t) = Q·L₃ + t·K, K singular at one point n of Q ∩ L₃ and through p = L₁ ∩ L₃.
fn split_cubic_into_conic_and_line(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(15, seed)?;
    let (q, m) = match &b.parts {
        Parts::ConicLines { conic, lines } => (conic.clone(), lines.clone()),
        _ => return Err("expected a conic and four lines".into()),
    };
    let pts = conic_on_line(&q, &m[2]);
    if pts.len() != 2 {
        return Err("Q ∩ L3 is not rational".into());
    }
    let (n, x) = (pts[0].clone(), pts[1].clone());
    let p = meet(&m[0], &m[2]);
    let k = member(rng, &forms_with(3, std::slice::from_ref(&p), std::slice::from_ref(&n)), h)?;
    let c = pencil(&(&q * &geom::line_poly(&m[2])), &k);
    Ok(DegenerationPath {
        r: 14,
        family: CurveFamily { components: vec![c, lin(&m[0]), lin(&m[1]), lin(&m[3])], points: vec![constant(&p)] },
        q1: constant(&p),
        q2: constant(&meet(&m[1], &m[3])),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0, 3], vec![1], vec![2], vec![4]],
        smoothed: Some(x),
        unresolved: Some(n),
        recipe: "C(t) = Q·L3 + t·K, K singular at the unresolved point of Q ∩ L3".into(),
    })
}

/// r = 13: Q(t) = L₁L₂ + t·G with G through p and L₂ ∩ L₃.
fn split_conic_into_two_lines(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(14, seed)?;
    let (c, l, p) = match &b.parts {
        Parts::CubicLines { cubic, lines, p } => (cubic.clone(), lines.clone(), p.clone()),
        _ => return Err("expected a cubic and three lines".into()),
    };
    let q2 = meet(&l[1], &l[2]);
    let g = member(rng, &forms_with(2, &[p.clone(), q2.clone()], &[]), h)?;
    let q = pencil(&(&geom::line_poly(&l[0]) * &geom::line_poly(&l[1])), &g);
    Ok(DegenerationPath {
        r: 13,
        family: CurveFamily { components: vec![lift_t(&c), q, lin(&l[2])], points: vec![] },
        q1: constant(&p),
        q2: constant(&q2),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0], vec![1, 2], vec![3]],
        smoothed: Some(meet(&l[0], &l[1])),
        unresolved: None,
        recipe: "Q(t) = L1·L2 + t·G".into(),
    })
}

/// r = 12: C₂(t) = Q·L + t·K, K singular at q₂ (the unresolved point of Q ∩ L) and through q₁.
fn split_second_cubic(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(13, seed)?;
    let (c, q, l) = match &b.parts {
        Parts::CubicConicLine { cubic, conic, line } => (cubic.clone(), conic.clone(), line.clone()),
        _ => return Err("expected a cubic, a conic and a line".into()),
    };
    let (q1, q2) = (b.q1.clone(), b.q2.clone());
    let k = member(rng, &forms_with(3, std::slice::from_ref(&q1), std::slice::from_ref(&q2)), h)?;
    let c2 = pencil(&(&q * &geom::line_poly(&l)), &k);
    let smoothed = conic_on_line(&q, &l).into_iter().find(|x| !geom::same_point(x, &q2));
    Ok(DegenerationPath {
        r: 12,
        family: CurveFamily { components: vec![lift_t(&c), c2], points: vec![constant(&q1)] },
        q1: constant(&q1),
        q2: constant(&q2),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0], vec![1, 2]],
        smoothed,
        unresolved: Some(q2),
        recipe: "C2(t) = Q·L + t·K, K singular at the unresolved point q2".into(),
    })
}

/// r = 11: the images Φ(xy = t·z²) of a cubic map.
fn coble_to_two_cubics(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let phi = CubicMap::random(rng, h.min(4))?;
    let (c1, c2) = (phi.line_image(0)?, phi.line_image(1)?);
    let p = phi.fixed_node();
    let moving = phi.moving_node();
    let q2 = moving.at(&Rational::zero()).ok_or("moving node undefined at 0")?;
    let b = MarkedSextic::new(12, Parts::TwoCubics { c1, c2, p: p.clone() }, p.clone(), q2, seed).map_err(|e| e.to_string())?;
    let f = phi.family()?;
    Ok(DegenerationPath {
        r: 11,
        family: CurveFamily { components: vec![f], points: vec![constant(&p), moving.clone()] },
        q1: constant(&p),
        q2: moving,
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0, 1]],
        smoothed: Some(phi.smoothed()),
        unresolved: None,
        recipe: "image of the conic xy = t·z² under a cubic map; x = 0 and y = 0 give C1, C2".into(),
    })
}

/// r = 10: F₀ + t·E², E the cubic through the nodes other than the smoothed one.
fn halphen_to_coble(seed: u64, _h: i64, _rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(11, seed)?;
    let x = match &b.parts {
        Parts::Irreducible { nodes, .. } if nodes.len() >= 3 => nodes[2].clone(),
        _ => return Err("expected three assigned nodes".into()),
    };
    let loc = b.locus().map_err(|e| e.to_string())?;
    let kept: Vec<PointSet> = loc.points.iter().filter(|p| p.kind == SingKind::Node && !p.location.is_point(&x)).map(|p| p.location.clone()).collect();
    let es = forms_with_sets(3, &kept, &[]);
    if es.len() != 1 {
        return Err(format!("{} cubics through the kept nodes", es.len()));
    }
    let e2 = es[0].primitive().pow(2);
    let f = pencil(b.curve.equation(), &e2);
    let (q1, q2) = (b.q1.clone(), b.q2.clone());
    Ok(DegenerationPath {
        r: 10,
        family: CurveFamily { components: vec![f], points: vec![constant(&q1), constant(&q2)] },
        q1: constant(&q1),
        q2: constant(&q2),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0]],
        smoothed: Some(x),
        unresolved: None,
        recipe: "F(t) = F0 + t·E², E the cubic through nine nodes".into(),
    })
}

/// r ≤ 9: F₀ + t·S, S singular at all nodes but the last.
fn add_node(r: u32, seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Built {
    let b = boundary(r + 1, seed)?;
    let nodes = match &b.parts {
        Parts::Irreducible { nodes, .. } if nodes.len() == r as usize => nodes.clone(),
        _ => return Err(format!("expected {r} assigned nodes")),
    };
    let (kept, x) = (&nodes[..r as usize - 1], nodes[r as usize - 1].clone());
    let s = member(rng, &forms_with(6, &[], kept), h)?;
    let f = pencil(b.curve.equation(), &s);
    Ok(DegenerationPath {
        r,
        family: CurveFamily { components: vec![f], points: kept.iter().map(constant).collect() },
        q1: constant(&b.q1),
        q2: constant(&b.q2),
        boundary: b,
        samples: vec![],
        component_map: vec![vec![0]],
        smoothed: Some(x),
        unresolved: None,
        recipe: "F(t) = F0 + t·S, S singular at the kept nodes".into(),
    })
}
