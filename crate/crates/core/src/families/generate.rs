//! Random instances of each family, resampled until membership and
//! genericity are certified.

use super::construct::*;
use super::normal_form::instance_from_lambdas;
use super::verify::{check_genericity, verify_membership};
use super::{FamilyError, MarkedSextic, Parts};
use crate::curves::geom::{self, Pt};
use crate::exactmath::linalg;
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::upoly::UniPoly;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Bound on numerators and denominators of sampled parameters.
    pub height: i64,
    pub max_attempts: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { height: 40, max_attempts: 40 }
    }
}

pub fn generate_instance(r: u32, seed: u64) -> Result<MarkedSextic, FamilyError> {
    generate_with(r, seed, &GenConfig::default())
}

pub fn generate_with(r: u32, seed: u64, cfg: &GenConfig) -> Result<MarkedSextic, FamilyError> {
    if !(3..=18).contains(&r) {
        return Err(FamilyError::BadLabel(r));
    }
    let mut last = String::new();
    for attempt in 0..cfg.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((r as u64) << 40) ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let cand = match candidate(r, seed, cfg.height.max(2), &mut rng) {
            Ok(c) => c,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let rep = verify_membership(&cand);
        if !rep.pass() {
            last = rep.failures().join("; ");
            continue;
        }
        let g = check_genericity(&cand);
        if !g.pass {
            last = format!("genericity: {}", g.detail);
            continue;
        }
        return Ok(cand);
    }
    Err(FamilyError::RetryExhausted { r, attempts: cfg.max_attempts, last })
}

type Cand = Result<MarkedSextic, String>;

fn candidate(r: u32, seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    match r {
        18 => r18(seed, h, rng),
        17 => r17(seed, h, rng),
        16 => r16(seed, h, rng),
        15 => r15(seed, h, rng),
        14 => r14(seed, h, rng),
        13 => r13(seed, h, rng),
        12 => r12(seed, h, rng),
        11 => r11(seed, h, rng),
        10 => r10(seed, h, rng),
        _ => assigned_nodes(r, seed, h, rng),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Small projectivities keep coefficient growth in check.
fn rand_transform(rng: &mut ChaCha8Rng, h: i64) -> geom::Mat3 {
    geom::random_invertible(rng, h.min(5))
}

fn rand_line(rng: &mut ChaCha8Rng, h: i64) -> Pt {
    rand_point(rng, h)
}

fn meet(a: &Pt, b: &Pt) -> Pt {
    geom::normalize(&geom::meet(a, b))
}

fn line(a: &Pt, b: &Pt) -> Result<Pt, String> {
    let l = geom::line_through(a, b);
    if geom::is_zero_vec(&l) {
        return Err("coincident points".into());
    }
    Ok(geom::normalize(&l))
}

fn distinct_params(rng: &mut ChaCha8Rng, h: i64, n: usize, avoid: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = vec![];
    let mut bad = avoid.to_vec();
    while v.len() < n {
        let x = rand_q_avoiding(rng, h, &bad);
        bad.push(x.clone());
        v.push(x);
    }
    v
}

fn r18(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let ps = distinct_params(rng, h, 2, &[Rational::one()]);
    let m = rand_transform(rng, h);
    instance_from_lambdas(&ps[0], &ps[1], &m, seed).map_err(err)
}

fn r17(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let p = rand_point(rng, h);
    let mut lines: Vec<Pt> = (0..3).map(|_| rand_line(rng, h)).collect();
    for _ in 0..3 {
        lines.push(line(&p, &rand_point(rng, h))?);
    }
    lines_instance(17, lines, seed)
}

fn r16(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let lines: Vec<Pt> = (0..6).map(|_| rand_line(rng, h)).collect();
    lines_instance(16, lines, seed)
}

fn lines_instance(r: u32, lines: Vec<Pt>, seed: u64) -> Cand {
    let lines: [Pt; 6] = lines.try_into().map_err(|_| "need six lines".to_string())?;
    let (q1, q2) = (meet(&lines[0], &lines[3]), meet(&lines[1], &lines[4]));
    MarkedSextic::new(r, Parts::Lines { lines }, q1, q2, seed).map_err(err)
}

fn r15(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let m = rand_transform(rng, h);
    let conic = transform_form(&standard_conic(), &m);
    let a = distinct_params(rng, h, 8, &[]);
    let pts: Vec<Pt> = a.iter().map(|x| transform_point(&conic_point(Some(x)), &m)).collect();
    let lines: Vec<Pt> = (0..4).map(|k| line(&pts[2 * k], &pts[2 * k + 1])).collect::<Result<_, _>>()?;
    let lines: [Pt; 4] = lines.try_into().unwrap();
    let (q1, q2) = (meet(&lines[0], &lines[2]), meet(&lines[1], &lines[3]));
    MarkedSextic::new(15, Parts::ConicLines { conic, lines }, q1, q2, seed).map_err(err)
}

/// Transformed standard nodal cubic and its point map u ↦ point.
fn nodal_cubic(rng: &mut ChaCha8Rng, h: i64) -> (crate::exactmath::poly::Poly, impl Fn(&Rational) -> Pt) {
    let m = rand_transform(rng, h);
    let c = transform_form(&standard_nodal_cubic(), &m);
    (c, move |u: &Rational| transform_point(&nodal_point(u), &m))
}

fn r14(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let (cubic, at) = nodal_cubic(rng, h);
    let u = distinct_params(rng, h, 6, &[Rational::one()]);
    let lines: Vec<Pt> = (0..3).map(|k| line(&at(&u[2 * k]), &at(&u[2 * k + 1]))).collect::<Result<_, _>>()?;
    let lines: [Pt; 3] = lines.try_into().unwrap();
    let p = at(&u[0]);
    let q2 = meet(&lines[1], &lines[2]);
    MarkedSextic::new(14, Parts::CubicLines { cubic, lines, p: p.clone() }, p, q2, seed).map_err(err)
}

/// Second intersection of the conic with the line through its point a and b.
fn conic_second_point(q: &crate::exactmath::poly::Poly, a: &Pt, b: &Pt) -> Option<Pt> {
    let at = |s: Rational| q.eval(&geom::add(a, &geom::scale(&s, b)));
    let (f1, fm1) = (at(Rational::one()), at(-Rational::one()));
    let half = rational::qf(1, 2);
    let lin = (f1.clone() - fm1.clone()) * half.clone();
    let quad = (f1 + fm1) * half;
    if quad.is_zero() || lin.is_zero() {
        return None;
    }
    let s = -lin / quad;
    Some(geom::normalize(&geom::add(a, &geom::scale(&s, b))))
}

fn r13(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let (cubic, at) = nodal_cubic(rng, h);
    let mut u = distinct_params(rng, h, 6, &[Rational::one()]);
    let pts: Vec<Pt> = u[..5].iter().map(&at).collect();
    let conics = forms_with(2, &pts, &[]);
    if conics.len() != 1 {
        return Err("conic through five points not unique".into());
    }
    let conic = conics[0].primitive();
    let r = rand_point(rng, h);
    let q2 = conic_second_point(&conic, &pts[1], &r).ok_or("tangent direction")?;
    let c = at(&u.pop().unwrap());
    let l = line(&q2, &c)?;
    let q1 = pts[0].clone();
    MarkedSextic::new(13, Parts::CubicConicLine { cubic, conic, line: l }, q1, q2, seed).map_err(err)
}

fn r12(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let (c1, at) = nodal_cubic(rng, h);
    let u = distinct_params(rng, h, 6, &[Rational::one()]);
    let pts: Vec<Pt> = u.iter().map(&at).collect();
    let n2 = rand_point(rng, h);
    let cs = forms_with(3, &pts, std::slice::from_ref(&n2));
    if cs.len() != 1 {
        return Err("second cubic not unique".into());
    }
    let p = pts[0].clone();
    MarkedSextic::new(12, Parts::TwoCubics { c1, c2: cs[0].primitive(), p: p.clone() }, p, n2, seed).map_err(err)
}

/// Image of a random degree-6 map ℙ¹ → ℙ² identifying three prescribed pairs of parameters.
fn r11(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let hs = h.min(6);
    let a = distinct_params(rng, hs, 6, &[]);
    let w: Vec<Pt> = (0..3).map(|_| rand_point(rng, hs)).collect();
    let mut rows: Vec<Vec<Rational>> = vec![];
    for (k, tau) in a.iter().enumerate() {
        let wk = &w[k / 2];
        let pw: Vec<Rational> = (0..7).map(|e| num_traits::pow(tau.clone(), e)).collect();
        for j in 0..3 {
            // (φ(τ) × W)_j = φ_{j+1} W_{j+2} − φ_{j+2} W_{j+1}
            let (i1, i2) = ((j + 1) % 3, (j + 2) % 3);
            let mut row = vec![Rational::zero(); 21];
            for e in 0..7 {
                row[i1 * 7 + e] += pw[e].clone() * wk[i2].clone();
                row[i2 * 7 + e] -= pw[e].clone() * wk[i1].clone();
            }
            rows.push(row);
        }
    }
    let ns = linalg::nullspace(&rows, 21);
    let mut c = vec![Rational::zero(); 21];
    for v in &ns {
        let k = rand_int(rng, 3);
        for i in 0..21 {
            c[i] += k.clone() * v[i].clone();
        }
    }
    let phi: [UniPoly; 3] = std::array::from_fn(|i| UniPoly::new(c[i * 7..i * 7 + 7].to_vec()));
    if phi.iter().all(|f| f.degree() != Some(6)) {
        return Err("map has a base point at infinity".into());
    }
    let sextic = implicitize_sextic(&phi).ok_or("implicitization not unique")?;
    let (q1, q2) = (w[0].clone(), w[1].clone());
    MarkedSextic::new(11, Parts::Irreducible { sextic, nodes: w }, q1, q2, seed).map_err(err)
}

/// Nine points on a nodal cubic with product of parameters −1: the sextics
/// singular there form a pencil containing twice the cubic.
fn r10(seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let hs = h.min(8);
    let (cubic, at) = nodal_cubic(rng, hs);
    let mut u = distinct_params(rng, hs, 8, &[Rational::one(), -Rational::one()]);
    let prod = u.iter().fold(Rational::one(), |a, b| a * b.clone());
    let last = -Rational::one() / prod;
    if u.contains(&last) {
        return Err("repeated point".into());
    }
    u.push(last);
    let nodes: Vec<Pt> = u.iter().map(&at).collect();
    let pencil = forms_with(6, &[], &nodes);
    if pencil.len() != 2 {
        return Err(format!("expected a pencil, got dimension {}", pencil.len()));
    }
    let e2 = cubic.pow(2).primitive();
    let sextic = random_member(rng, &pencil, 5).ok_or("zero member")?;
    if sextic == e2 || sextic == -e2.clone() {
        return Err("picked the double cubic".into());
    }
    let (q1, q2) = (nodes[0].clone(), nodes[1].clone());
    MarkedSextic::new(10, Parts::Irreducible { sextic, nodes }, q1, q2, seed).map_err(err)
}

fn assigned_nodes(r: u32, seed: u64, h: i64, rng: &mut ChaCha8Rng) -> Cand {
    let nodes: Vec<Pt> = (0..r - 1).map(|_| rand_point(rng, h)).collect();
    let basis = forms_with(6, &[], &nodes);
    let sextic = random_member(rng, &basis, h.min(10)).ok_or("empty system")?;
    let (q1, q2) = (nodes[0].clone(), nodes[1].clone());
    MarkedSextic::new(r, Parts::Irreducible { sextic, nodes }, q1, q2, seed).map_err(err)
}

