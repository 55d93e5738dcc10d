//! Certified singular locus: elimination by resultants in generic
//! coordinates, classification into nodes and ordinary triple points.

use super::geom::{self, Mat3, Pt};
use super::points::{AlgPoints, PointSet};
use super::{CurveError, PlaneCurve};
use crate::exactmath::poly::{Poly, XYZ};
use crate::exactmath::quadext::QuadExt;
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::resring;
use crate::exactmath::resultant::{self, resultant_upoly};
use crate::exactmath::upoly::UniPoly;
use num_traits::{One, Zero};
use rand::SeedableRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingKind {
    Node,
    OrdinaryTriple,
    Other,
}

impl SingKind {
    pub fn milnor(self) -> Option<u32> {
        match self {
            SingKind::Node => Some(1),
            SingKind::OrdinaryTriple => Some(4),
            SingKind::Other => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            SingKind::Node => "node",
            SingKind::OrdinaryTriple => "ordinary-triple",
            SingKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tangents {
    Unknown,
    /// Points (other than the node) on the two tangent lines.
    NodeDirections([[QuadExt; 3]; 2]),
    /// The three tangent lines, when all are rational.
    TripleLines(Vec<Pt>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub location: PointSet,
    pub kind: SingKind,
    pub milnor: u32,
    pub tangents: Tangents,
    /// Indices of the curve components through the point(s).
    pub components: Vec<usize>,
}

impl SingularPoint {
    pub fn degree(&self) -> usize {
        self.location.degree()
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "location": self.location.to_json(),
            "kind": self.kind.name(),
            "milnor": self.milnor,
            "components": self.components,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointClass {
    Smooth,
    Singular(SingularPoint),
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub points: Vec<SingularPoint>,
    /// Σ (resultant multiplicity) over the eliminated x-coordinates.
    pub elimination_milnor: u32,
    /// Σ Milnor numbers of the classified points (with cluster sizes).
    pub classified_milnor: u32,
    pub attempts: usize,
}

impl SingularLocus {
    pub fn count(&self, kind: SingKind) -> usize {
        self.points.iter().filter(|p| p.kind == kind).map(|p| p.degree()).sum()
    }
}

/// F(P + s·V₁ + t·V₂) as a polynomial in (s, t).
pub fn local_expansion(f: &Poly, p: &Pt) -> (Poly, Pt, Pt) {
    let (v1, v2) = geom::complement_basis(p);
    let st = ["s", "t"];
    let s = Poly::var(&st, 0);
    let t = Poly::var(&st, 1);
    let subs: Vec<Poly> = (0..3)
        .map(|i| &(&Poly::constant(&st, p[i].clone()) + &s.scale(&v1[i])) + &t.scale(&v2[i]))
        .collect();
    (f.compose(&subs), v1, v2)
}

fn directional(f: &Poly, v: &Pt) -> Poly {
    let mut acc = f.zero_like();
    for k in 0..3 {
        if !v[k].is_zero() {
            acc = &acc + &f.diff(k).scale(&v[k]);
        }
    }
    acc
}

/// Terms of total degree ≤ order of F(P + s·V₁ + t·V₂), with the V's of `local_expansion`.
pub fn local_jet(f: &Poly, p: &Pt, order: u32) -> (Poly, Pt, Pt) {
    let (v1, v2) = geom::complement_basis(p);
    let st = ["s", "t"];
    let mut g = Poly::zero(&st);
    // row[j] = D_{V1}^i D_{V2}^j F
    let mut di = f.clone();
    let mut fact_i = Rational::one();
    for i in 0..=order {
        if i > 0 {
            di = directional(&di, &v1);
            fact_i = fact_i * rational::q(i as i64);
        }
        let mut dj = di.clone();
        let mut fact_j = Rational::one();
        for j in 0..=order - i {
            if j > 0 {
                dj = directional(&dj, &v2);
                fact_j = fact_j * rational::q(j as i64);
            }
            let c = dj.eval(p) / (fact_i.clone() * fact_j.clone());
            if !c.is_zero() {
                g.add_term(vec![i, j], c);
            }
        }
    }
    (g, v1, v2)
}

fn binary_cubic_disc(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    let k = |n: i64| rational::q(n);
    b * b * c * c - k(4) * a * c * c * c - k(4) * b * b * b * d - k(27) * a * a * d * d + k(18) * a * b * c * d
}

/// Hessian matrix of F at P.
pub fn hessian_at(f: &Poly, p: &Pt) -> [[Rational; 3]; 3] {
    let mut h: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        let fi = f.diff(i);
        for j in 0..3 {
            h[i][j] = fi.diff(j).eval(p);
        }
    }
    h
}

/// Classify the point p of the curve.
pub fn classify_singularity(c: &PlaneCurve, p: &Pt) -> Result<PointClass, CurveError> {
    let f = c.equation();
    if !f.eval(p).is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    if (0..3).any(|i| !f.diff(i).eval(p).is_zero()) {
        return Ok(PointClass::Smooth);
    }
    let p = geom::normalize(p);
    let (g, v1, v2) = local_jet(f, &p, 3);
    let components: Vec<usize> = c.components().iter().enumerate().filter(|(_, k)| k.factor.eval(&p).is_zero()).map(|(i, _)| i).collect();
    let (al, be, ga) = (g.coeff(&[2, 0]), g.coeff(&[1, 1]), g.coeff(&[0, 2]));
    let disc = be.clone() * be.clone() - rational::q(4) * al.clone() * ga.clone();
    let mk = |kind: SingKind, tangents: Tangents| {
        PointClass::Singular(SingularPoint {
            location: PointSet::Rational(p.clone()),
            kind,
            milnor: kind.milnor().unwrap_or(0),
            tangents,
            components: components.clone(),
        })
    };
    if !disc.is_zero() {
        let q1: [QuadExt; 3] = geom::lift(&v1);
        let q2: [QuadExt; 3] = geom::lift(&v2);
        let dirs = if !ga.is_zero() {
            let sq = QuadExt::sqrt_of(&disc);
            let den = QuadExt::from(rational::q(2) * ga.clone());
            let r1 = (QuadExt::from(-be.clone()) + sq.clone()) / den.clone();
            let r2 = (QuadExt::from(-be.clone()) - sq) / den;
            [geom::add(&q1, &geom::scale(&r1, &q2)), geom::add(&q1, &geom::scale(&r2, &q2))]
        } else {
            // s·(α s + β t): directions V₂ and β V₁ − α V₂
            let d2 = geom::add(&geom::scale(&QuadExt::from(be.clone()), &q1), &geom::scale(&QuadExt::from(-al.clone()), &q2));
            [q2.clone(), d2]
        };
        return Ok(mk(SingKind::Node, Tangents::NodeDirections(dirs)));
    }
    if !(al.is_zero() && be.is_zero() && ga.is_zero()) {
        return Ok(mk(SingKind::Other, Tangents::Unknown));
    }
    let (a, b, cc, d) = (g.coeff(&[3, 0]), g.coeff(&[2, 1]), g.coeff(&[1, 2]), g.coeff(&[0, 3]));
    if binary_cubic_disc(&a, &b, &cc, &d).is_zero() {
        return Ok(mk(SingKind::Other, Tangents::Unknown));
    }
    // tangent directions: roots of a + b r + c r² + d r³ (r = t/s), plus V₂ when d = 0
    let cubic = UniPoly::new(vec![a, b, cc, d.clone()]);
    let mut dirs: Vec<Pt> = cubic.rational_roots().into_iter().map(|r| geom::add(&v1, &geom::scale(&r, &v2))).collect();
    if d.is_zero() {
        dirs.push(v2.clone());
    }
    let tangents = if dirs.len() == 3 {
        let mut lines: Vec<Pt> = dirs.iter().map(|dv| geom::line_through(&p, dv)).collect();
        lines.sort();
        Tangents::TripleLines(lines)
    } else {
        Tangents::Unknown
    };
    Ok(mk(SingKind::OrdinaryTriple, tangents))
}

/// All singular points, certified by the Milnor-number count.
pub fn singular_locus(c: &PlaneCurve) -> Result<Vec<SingularPoint>, CurveError> {
    singular_locus_certified(c, 0).map(|l| l.points)
}

const MAX_ATTEMPTS: usize = 12;

pub fn singular_locus_certified(c: &PlaneCurve, seed: u64) -> Result<SingularLocus, CurveError> {
    if !c.is_reduced() {
        return Err(CurveError::NonReduced);
    }
    if !c.equation().is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1c0c);
    for attempt in 0..MAX_ATTEMPTS {
        let m = geom::random_unimodular(&mut rng);
        match attempt_locus(c, &m) {
            Attempt::Done(mut l) => {
                l.attempts = attempt + 1;
                return Ok(l);
            }
            Attempt::Retry => continue,
            Attempt::NonReduced => {
                if attempt >= 2 {
                    return Err(CurveError::NonReduced);
                }
            }
        }
    }
    Err(CurveError::RetryExhausted(MAX_ATTEMPTS))
}

enum Attempt {
    Done(SingularLocus),
    Retry,
    NonReduced,
}

/// Coefficients in y, each a polynomial in x (z already set to 1).
fn yx_coeffs(p: &Poly) -> Vec<UniPoly> {
    p.coeffs_in(1).iter().map(|c| c.to_upoly(0).expect("affine polynomial in x, y")).collect()
}

fn singular_at_infinity(a: &Poly) -> bool {
    let forms = [a.clone(), a.diff(0), a.diff(1), a.diff(2)];
    let one = rational::q(1);
    let zero = Rational::zero();
    if forms.iter().all(|f| f.eval(&[one.clone(), zero.clone(), zero.clone()]).is_zero()) {
        return true;
    }
    let mut g = UniPoly::zero();
    for f in &forms {
        let u = f.subs_const(2, &zero).subs_const(1, &one).to_upoly(0).unwrap();
        g = g.gcd(&u);
    }
    g.is_zero() || g.deg() > 0
}

/// y₀ with gy ≡ (y − y₀)^k mod h, for monic gy of degree k ≥ 1.
fn single_root(h: &UniPoly, gy: &[UniPoly]) -> Option<UniPoly> {
    let k = gy.len().checked_sub(1).filter(|&k| k >= 1)?;
    let y0 = -&gy[k - 1].scale(&rational::qf(1, k as i64));
    let y0 = y0.rem(h);
    let neg = -&y0;
    let mut binom = Rational::one();
    let mut pw = UniPoly::one();
    // coefficient of y^j is C(k, j)·(−y₀)^{k−j}; walk j downward
    for j in (0..=k).rev() {
        if (&pw.scale(&binom) - &gy[j]).rem(h) != UniPoly::zero() {
            return None;
        }
        pw = (&pw * &neg).rem(h);
        binom = binom * rational::q(j as i64) / rational::q((k - j + 1) as i64);
    }
    Some(y0)
}

fn attempt_locus(c: &PlaneCurve, m: &Mat3) -> Attempt {
    let f = c.equation();
    let d = c.degree();
    let a = geom::pullback(f, m);
    if a.coeff(&[0, d, 0]).is_zero() || singular_at_infinity(&a) {
        return Attempt::Retry;
    }
    let one = rational::q(1);
    let aa = a.subs_const(2, &one);
    let ax = aa.diff(0);
    let ay = aa.diff(1);
    if ax.is_zero() || ay.is_zero() {
        return Attempt::Retry;
    }
    let (cx, cy, ca) = (yx_coeffs(&ax), yx_coeffs(&ay), yx_coeffs(&aa));
    let r = resultant_upoly(&cx, &cy);
    let dd = resultant_upoly(&ca, &cy);
    if r.is_zero() || dd.is_zero() {
        return Attempt::NonReduced;
    }
    let g = r.gcd(&dd);
    let mut parts: Vec<(UniPoly, u32)> = vec![];
    if g.deg() > 0 {
        let s = g.squarefree_part();
        let mut cur = s;
        let mut deriv = r.clone();
        let mut k = 1u32;
        while cur.deg() > 0 {
            deriv = deriv.derivative();
            let next = cur.gcd(&deriv);
            let exact = cur.div_exact(&next);
            if exact.deg() > 0 {
                // split off the rational roots
                let mut rest = exact.clone();
                for root in exact.rational_roots() {
                    let lin = UniPoly::linear_root(&root);
                    rest = rest.div_exact(&lin);
                    parts.push((lin, k));
                }
                if rest.deg() > 0 {
                    parts.push((rest.monic(), k));
                }
            }
            cur = next;
            k += 1;
        }
    }
    // first subresultants of (Ax, Ay) and (A, Ay): away from their degeneracy
    // loci each gives the unique common root in y
    let s1 = resultant::subresultant1_upoly(&cx, &cy);
    let t1 = resultant::subresultant1_upoly(&ca, &cy);
    let elimination: u32 = parts.iter().map(|(h, mu)| h.deg() as u32 * mu).sum();
    let mut points = vec![];
    for (h, mu) in &parts {
        let (bad_s, good) = resring::split_by(h, &s1.1);
        let (bad_t, good) = if good.deg() > 0 { resring::split_by(&good, &t1.1) } else { (UniPoly::one(), good) };
        let mut pieces: Vec<AlgPoints> = vec![];
        if good.deg() > 0 {
            let red = |u: &UniPoly| u.rem(&good);
            let cross = (&(&red(&s1.0) * &red(&t1.1)) - &(&red(&t1.0) * &red(&s1.1))).rem(&good);
            if !cross.is_zero() {
                return Attempt::Retry;
            }
            let x = UniPoly::x();
            pieces.push(AlgPoints::new(good.clone(), [&x * &s1.1, -&s1.0, s1.1.clone()]));
        }
        let rest = &bad_s * &bad_t;
        if rest.deg() > 0 {
            for (hi, gy) in resring::ygcd(&rest, &cx, &cy) {
                let Some(yv) = single_root(&hi, &gy) else {
                    return Attempt::Retry;
                };
                let local = AlgPoints::new(hi, [UniPoly::x(), yv, UniPoly::one()]);
                if local.split_poly(&aa).1.is_some() {
                    return Attempt::Retry;
                }
                pieces.push(local);
            }
        }
        for local in pieces {
            let orig = map_points(&local, m);
            if local.degree() == 1 {
                let p = orig.to_rational().unwrap();
                match classify_singularity(c, &p) {
                    Ok(PointClass::Singular(mut sp)) => {
                        match sp.kind.milnor() {
                            Some(k) if k != *mu => return Attempt::Retry,
                            Some(_) => {}
                            None => sp.milnor = *mu,
                        }
                        points.push(sp);
                    }
                    _ => return Attempt::Retry,
                }
            } else if *mu == 1 {
                // Milnor number one: a node
                for (piece, comps) in refine_by_components(c, orig) {
                    points.push(SingularPoint { location: PointSet::from_alg(piece), kind: SingKind::Node, milnor: 1, tangents: Tangents::Unknown, components: comps });
                }
            } else {
                let Ok(inv) = local.coords[2].inverse_mod(&local.h) else {
                    return Attempt::Retry;
                };
                let affine = AlgPoints::new(local.h.clone(), [(&local.coords[0] * &inv).rem(&local.h), (&local.coords[1] * &inv).rem(&local.h), UniPoly::one()]);
                for (pts, kind) in classify_cluster(&aa, &affine) {
                    if let Some(k) = kind.milnor() {
                        if k != *mu {
                            return Attempt::Retry;
                        }
                    }
                    let pts_orig = map_points(&pts, m);
                    for (piece, comps) in refine_by_components(c, pts_orig) {
                        points.push(SingularPoint {
                            location: PointSet::from_alg(piece),
                            kind,
                            milnor: *mu,
                            tangents: Tangents::Unknown,
                            components: comps,
                        });
                    }
                }
            }
        }
    }
    let classified: u32 = points.iter().map(|p| p.milnor * p.degree() as u32).sum();
    if classified != elimination {
        return Attempt::Retry;
    }
    sort_points(&mut points);
    Attempt::Done(SingularLocus { points, elimination_milnor: elimination, classified_milnor: classified, attempts: 0 })
}

fn sort_points(points: &mut [SingularPoint]) {
    points.sort_by(|a, b| {
        let key = |p: &SingularPoint| match &p.location {
            PointSet::Rational(q) => (0usize, q.clone(), vec![]),
            PointSet::Cluster(c) => (c.degree(), Default::default(), c.h.coeffs().to_vec()),
        };
        key(a).cmp(&key(b))
    });
}

/// Original-coordinate version of points given in transformed coordinates.
fn map_points(p: &AlgPoints, m: &Mat3) -> AlgPoints {
    let c = |i: usize| {
        let mut acc = UniPoly::zero();
        for j in 0..3 {
            acc = &acc + &p.coords[j].scale(&m[i][j]);
        }
        acc
    };
    AlgPoints::new(p.h.clone(), [c(0), c(1), c(2)])
}

fn classify_cluster(aa: &Poly, pts: &AlgPoints) -> Vec<(AlgPoints, SingKind)> {
    let dx = aa.diff(0);
    let dy = aa.diff(1);
    let (fxx, fxy, fyy) = (dx.diff(0), dx.diff(1), dy.diff(1));
    let hess = &(&fxx * &fyy) - &(&fxy * &fxy);
    let mut out = vec![];
    let (flat, nodes) = pts.split_poly(&hess);
    if let Some(n) = nodes {
        out.push((n, SingKind::Node));
    }
    let Some(flat) = flat else { return out };
    // second derivatives must all vanish for a triple point
    let mut rest = vec![flat];
    for second in [&fxx, &fxy, &fyy] {
        let mut next = vec![];
        for p in rest {
            let (z, nz) = p.split_poly(second);
            if let Some(nz) = nz {
                out.push((nz, SingKind::Other));
            }
            if let Some(z) = z {
                next.push(z);
            }
        }
        rest = next;
    }
    let k6 = rational::qf(1, 6);
    let k2 = rational::qf(1, 2);
    for p in rest {
        let a = p.eval(&fxx.diff(0)).scale(&k6);
        let b = p.eval(&fxx.diff(1)).scale(&k2);
        let c = p.eval(&fyy.diff(0)).scale(&k2);
        let d = p.eval(&fyy.diff(1)).scale(&k6);
        let h = &p.h;
        let mm = |u: &UniPoly, v: &UniPoly| (u * v).rem(h);
        let k = |n: i64| UniPoly::constant(rational::q(n));
        let bc = mm(&b, &c);
        let disc = &(&(&(&mm(&bc, &bc) - &mm(&k(4), &mm(&a, &mm(&c, &mm(&c, &c))))) - &mm(&k(4), &mm(&d, &mm(&b, &mm(&b, &b)))))
            - &mm(&k(27), &mm(&mm(&a, &a), &mm(&d, &d))))
            + &mm(&k(18), &mm(&mm(&a, &d), &bc));
        let (z, nz) = p.split(&disc);
        if let Some(nz) = nz {
            out.push((nz, SingKind::OrdinaryTriple));
        }
        if let Some(z) = z {
            out.push((z, SingKind::Other));
        }
    }
    out
}

/// Split a cluster so that every piece has a uniform set of components through it.
pub fn refine_by_components(c: &PlaneCurve, pts: AlgPoints) -> Vec<(AlgPoints, Vec<usize>)> {
    if c.components().len() == 1 {
        return vec![(pts, vec![0])];
    }
    let mut pieces = vec![(pts, vec![])];
    for (k, comp) in c.components().iter().enumerate() {
        let mut next = vec![];
        for (p, comps) in pieces {
            let (z, nz) = p.split_poly(&comp.factor);
            if let Some(z) = z {
                let mut cz: Vec<usize> = comps.clone();
                cz.push(k);
                next.push((z, cz));
            }
            if let Some(nz) = nz {
                next.push((nz, comps));
            }
        }
        pieces = next;
    }
    pieces
}

pub fn xyz_names() -> [&'static str; 3] {
    XYZ
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::geom::pt;
    use crate::exactmath::rational::q;

    fn v(i: usize) -> Poly {
        Poly::var(&XYZ, i)
    }

    #[test]
    fn nodal_cubic() {
        let (x, y, z) = (v(0), v(1), v(2));
        let f = &(&(&y.pow(2) * &z) - &(&x.pow(2) * &z)) - &x.pow(3);
        let c = PlaneCurve::from_equation(f).unwrap();
        let pts = singular_locus(&c).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, SingKind::Node);
        assert!(pts[0].location.is_point(&pt(0, 0, 1)));
        // tangents y = ±x
        if let Tangents::NodeDirections(d) = &pts[0].tangents {
            for dir in d {
                let (a, b) = (dir[0].clone(), dir[1].clone());
                assert_eq!(a.clone() * a, b.clone() * b);
            }
        } else {
            panic!("missing tangents");
        }
    }

    #[test]
    fn cusp_is_other_and_triple_detected() {
        let (x, y, z) = (v(0), v(1), v(2));
        let cusp = PlaneCurve::from_equation(&(&y.pow(2) * &z) - &x.pow(3)).unwrap();
        match classify_singularity(&cusp, &pt(0, 0, 1)).unwrap() {
            PointClass::Singular(s) => assert_eq!(s.kind, SingKind::Other),
            _ => panic!(),
        }
        let tri = PlaneCurve::from_components(vec![x.clone(), y.clone(), &x + &y]).unwrap();
        match classify_singularity(&tri, &pt(0, 0, 1)).unwrap() {
            PointClass::Singular(s) => assert_eq!(s.kind, SingKind::OrdinaryTriple),
            _ => panic!(),
        }
        assert_eq!(classify_singularity(&tri, &pt(1, 0, 0)).unwrap(), PointClass::Smooth);
        assert_eq!(classify_singularity(&tri, &pt(1, 1, 1)), Err(CurveError::NotOnCurve));
        let _ = z;
    }

    #[test]
    fn two_triple_points() {
        // three lines through [1:0:0] and three through [0:1:0]
        let lines = [pt(0, 1, 0), pt(0, 1, -1), pt(0, 1, -2), pt(1, 0, 0), pt(1, 0, -1), pt(1, 0, -3)];
        let c = PlaneCurve::from_components(lines.iter().map(geom::line_poly).collect()).unwrap();
        let l = singular_locus_certified(&c, 3).unwrap();
        assert_eq!(l.count(SingKind::OrdinaryTriple), 2);
        assert_eq!(l.count(SingKind::Node), 9);
        assert_eq!(l.elimination_milnor, 17);
    }

    #[test]
    fn six_lines() {
        let lines = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1), pt(1, 2, 4), pt(1, 3, 9)];
        let c = PlaneCurve::from_components(lines.iter().map(geom::line_poly).collect()).unwrap();
        let l = singular_locus_certified(&c, 1).unwrap();
        assert_eq!(l.points.len(), 15);
        assert!(l.points.iter().all(|p| p.kind == SingKind::Node && p.components.len() == 2));
        assert_eq!(l.elimination_milnor, 15);
    }

    #[test]
    fn irrational_nodes() {
        // x² + y² − 3z² meets x = 0 and y = 0 in two conjugate pairs
        let (x, y, z) = (v(0), v(1), v(2));
        let conic = &(&x.pow(2) + &y.pow(2)) - &z.pow(2).scale(&q(3));
        let c = PlaneCurve::from_components(vec![conic, y.clone(), x.clone()]).unwrap();
        let l = singular_locus_certified(&c, 5).unwrap();
        assert_eq!(l.count(SingKind::Node), 5);
        assert_eq!(l.points.iter().filter(|p| p.degree() == 2).count(), 2);
    }
}
