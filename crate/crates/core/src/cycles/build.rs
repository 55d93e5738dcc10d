use super::check::verify_divisor_sum;
use super::conic::{Conic, ConicPoint, LinearRatio};
use super::{CycleCertificate, CycleError, Crossing, DoubleCoverLine, ExceptionalCurve, Which};
use crate::curves::geom::{self, Pt};
use crate::exactmath::poly::Poly;
use crate::exactmath::{rational, QuadExt, Rational, UniPoly};
use crate::families::{check_genericity, Branch, MarkedSextic};
use num_traits::{One, Zero};

/// Base point of each conic parametrization: the first or second
/// branch point when those are rational, otherwise p_∞ or p₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BaseChoice {
    #[default]
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleOptions {
    pub base: BaseChoice,
    /// Starting k in P(t) = q₁ + t·(k·q₂ − q₁).
    pub scale: i64,
}

impl Default for CycleOptions {
    fn default() -> Self {
        CycleOptions { base: BaseChoice::First, scale: 1 }
    }
}

pub fn build_cycle(ms: &MarkedSextic, which: Which) -> Result<CycleCertificate, CycleError> {
    build_cycle_with(ms, which, &CycleOptions::default())
}

fn vq(p: &Pt) -> [Rational; 3] {
    p.clone()
}

fn param_restrict(f: &Poly, origin: &Pt, dir: &Pt) -> Result<UniPoly, CycleError> {
    let s = ["t"];
    let tv = Poly::var(&s, 0);
    let subs: Vec<Poly> = (0..3).map(|i| &Poly::constant(&s, origin[i].clone()) + &tv.scale(&dir[i])).collect();
    Ok(f.compose(&subs).to_upoly(0).map_err(crate::curves::CurveError::from)?)
}

fn hessian(f: &Poly, p: &Pt) -> [[Rational; 3]; 3] {
    let d: Vec<Poly> = (0..3).map(|i| f.diff(i)).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| d[i].diff(j).eval(p)))
}

fn bilinear(h: &[[Rational; 3]; 3], x: &Pt, y: &Pt) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += h[i][j].clone() * x[i].clone() * y[j].clone();
        }
    }
    acc
}

/// Branch points of a conic model, sorted, if rational.
fn rational_branch_points(g: &UniPoly) -> Option<[Rational; 2]> {
    let mut r = g.rational_roots();
    if r.len() != 2 {
        return None;
    }
    r.sort();
    Some([r[0].clone(), r[1].clone()])
}

fn pick_base(g: &UniPoly, choice: BaseChoice, p0: &ConicPoint, p_inf: &ConicPoint) -> ConicPoint {
    match (rational_branch_points(g), choice) {
        (Some(s), BaseChoice::First) => ConicPoint { t: QuadExt::from(s[0].clone()), w: QuadExt::zero() },
        (Some(s), BaseChoice::Second) => ConicPoint { t: QuadExt::from(s[1].clone()), w: QuadExt::zero() },
        (None, BaseChoice::First) => p_inf.clone(),
        (None, BaseChoice::Second) => p0.clone(),
    }
}

pub fn build_cycle_with(ms: &MarkedSextic, which: Which, opts: &CycleOptions) -> Result<CycleCertificate, CycleError> {
    let gen = check_genericity(ms);
    if !gen.pass {
        return Err(CycleError::Genericity(gen.detail));
    }
    let marking = ms.strong.ok_or(CycleError::NoStrongMarking)?;
    let f = ms.curve.equation();
    let (q1, q2) = (vq(&ms.q1), vq(&ms.q2));

    // a parameter with ∞ off the branch curve
    let mut found = None;
    for k in opts.scale..opts.scale + 32 {
        if k == 0 {
            continue;
        }
        let dir = geom::add(&geom::scale(&rational::q(k), &q2), &geom::scale(&rational::q(-1), &q1));
        let u = param_restrict(f, &q1, &dir)?;
        if u.deg() == 6 {
            found = Some((dir, u));
            break;
        }
    }
    let (dir, u) = found.ok_or_else(|| CycleError::Degenerate("no admissible line parameter".into()))?;
    let nodes = UniPoly::from_ints(&[0, 0, 1]).pow(1) * UniPoly::from_ints(&[1, -2, 1]);
    let (g, rem) = u.divrem(&nodes);
    if !rem.is_zero() || g.deg() != 2 {
        return Err(CycleError::Degenerate("B|_L is not t²(t−1)²·quadratic".into()));
    }
    let (t1, t2) = (Rational::zero(), Rational::one());
    let tq = match which {
        Which::Node1 => t1.clone(),
        Which::Node2 => t2.clone(),
    };
    let big_r = g.eval(&tq);
    if big_r.is_zero() || g.eval(&t1).is_zero() || g.eval(&t2).is_zero() {
        return Err(CycleError::Degenerate("a simple point of B|_L coincides with a node".into()));
    }
    let disc = g.coeff(1) * g.coeff(1) - rational::q(4) * g.coeff(2) * g.coeff(0);
    if disc.is_zero() {
        return Err(CycleError::Degenerate("L is tangent to B".into()));
    }

    let root = QuadExt::sqrt_of(&big_r);
    let (w0, winf) = match marking {
        Branch::Zero => (root.clone(), -root.clone()),
        Branch::Inf => (-root.clone(), root.clone()),
    };
    let tqx = QuadExt::from(tq.clone());
    let z0p0 = ConicPoint { t: tqx.clone(), w: w0.clone() };
    let z0pi = ConicPoint { t: tqx, w: winf.clone() };
    let base0 = pick_base(&g, opts.base, &z0p0, &z0pi);
    let conic0 = Conic { g: g.clone(), base: base0 };
    let s = conic0.branch_points();

    // tangent-cone quadric at the node, on directions dir + s·n
    let center = geom::add(&q1, &geom::scale(&tq, &dir));
    let hs = hessian(f, &center);
    let half = rational::qf(1, 2);
    let cands: [[i64; 3]; 9] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]];
    let n = cands
        .iter()
        .map(|c| geom::pt(c[0], c[1], c[2]))
        .find(|n| !geom::det3(&center, &dir, n).is_zero() && !bilinear(&hs, n, n).is_zero())
        .ok_or_else(|| CycleError::Degenerate("no transversal direction".into()))?;
    let tau = UniPoly::new(vec![half.clone() * bilinear(&hs, &dir, &dir), bilinear(&hs, &dir, &n), half * bilinear(&hs, &n, &n)]);
    if tau.coeff(0) != big_r {
        return Err(CycleError::Degenerate("tangent cone does not match the restriction".into()));
    }
    let zero = QuadExt::zero();
    let z1p0 = ConicPoint { t: zero.clone(), w: w0 };
    let z1pi = ConicPoint { t: zero, w: winf };
    let base1 = pick_base(&tau, opts.base, &z1p0, &z1pi);
    let conic1 = Conic { g: tau, base: base1 };
    let tangents = conic1.branch_points();

    let f0 = LinearRatio::zero_over_pole(&conic0.param_of(&z0p0), &conic0.param_of(&z0pi));
    let f1 = LinearRatio::zero_over_pole(&conic1.param_of(&z1pi), &conic1.param_of(&z1p0));
    let d = rational::rational_squarefree(&big_r).0;
    let node = match which {
        Which::Node1 => ms.q1.clone(),
        Which::Node2 => ms.q2.clone(),
    };
    let cert = CycleCertificate {
        r: ms.r,
        which,
        marking,
        node,
        z0: DoubleCoverLine { line: ms.marking_line(), origin: q1, direction: dir, t_q1: t1, t_q2: t2, s, conic: conic0 },
        z1: ExceptionalCurve { center, transversal: n, tangents, conic: conic1 },
        d,
        p0: Crossing { on_z0: z0p0, on_z1: z1p0 },
        p_inf: Crossing { on_z0: z0pi, on_z1: z1pi },
        f0,
        f1,
    };
    let chk = verify_divisor_sum(&cert);
    if !chk.pass {
        return Err(CycleError::Degenerate(format!("divisor check failed: {}", chk.detail)));
    }
    Ok(cert)
}
