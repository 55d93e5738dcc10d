//! Restriction of a plane curve to a line.

use super::geom::{self, Pt};
use super::points::{AlgPoints, PointSet};
use super::{CurveError, PlaneCurve};
use crate::exactmath::poly::Poly;
use crate::exactmath::upoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Transverse,
    /// The curve is singular at the point.
    Singular,
    /// Smooth point of the curve where the line is tangent.
    Tangency,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedPoint {
    pub location: PointSet,
    pub multiplicity: u32,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineRestriction {
    pub line: Pt,
    /// The parametrization used: points P + s·Q, with Q at s = ∞.
    pub base: (Pt, Pt),
    pub points: Vec<RestrictedPoint>,
}

impl LineRestriction {
    /// Multiplicities of the individual geometric points, largest first.
    pub fn pattern(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.points.iter().flat_map(|p| std::iter::repeat(p.multiplicity).take(p.location.degree())).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
    pub fn total(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity * p.location.degree() as u32).sum()
    }
    pub fn multiplicity_at(&self, q: &Pt) -> u32 {
        self.points.iter().find(|p| p.location.is_point(q)).map_or(0, |p| p.multiplicity)
    }
}

fn role_for(c: &PlaneCurve, loc: &AlgPoints, mult: u32) -> Vec<(AlgPoints, Role)> {
    if mult == 1 {
        return vec![(loc.clone(), Role::Transverse)];
    }
    let mut sing = vec![loc.clone()];
    let mut out = vec![];
    for i in 0..3 {
        let d = c.equation().diff(i);
        let mut next = vec![];
        for p in sing {
            let (z, nz) = p.split_poly(&d);
            if let Some(nz) = nz {
                out.push((nz, Role::Tangency));
            }
            if let Some(z) = z {
                next.push(z);
            }
        }
        sing = next;
    }
    out.extend(sing.into_iter().map(|p| (p, Role::Singular)));
    out
}

pub fn restrict_to_line(c: &PlaneCurve, l: &Pt) -> Result<LineRestriction, CurveError> {
    let (p, q) = geom::line_points(l);
    let f = c.equation();
    let d = c.degree();
    // u(s) = F(P + s Q)
    let s = ["s"];
    let sv = Poly::var(&s, 0);
    let subs: Vec<Poly> = (0..3).map(|i| &Poly::constant(&s, p[i].clone()) + &sv.scale(&q[i])).collect();
    let u = f.compose(&subs).to_upoly(0)?;
    if u.is_zero() {
        return Err(CurveError::LineIsComponent);
    }
    let mut pts = vec![];
    let at_inf = d - u.deg() as u32;
    let param = |h: UniPoly| {
        let coords = [0, 1, 2].map(|i| &UniPoly::constant(p[i].clone()) + &UniPoly::x().scale(&q[i]));
        AlgPoints::new(h, coords)
    };
    let mut add = |a: AlgPoints, mult: u32| {
        for (piece, role) in role_for(c, &a, mult) {
            pts.push(RestrictedPoint { location: PointSet::from_alg(piece), multiplicity: mult, role });
        }
    };
    for (fac, mult) in u.squarefree_decomposition() {
        let mut rest = fac.clone();
        for r in fac.rational_roots() {
            let lin = UniPoly::linear_root(&r);
            rest = rest.div_exact(&lin);
            add(param(lin), mult as u32);
        }
        if rest.deg() > 0 {
            add(param(rest), mult as u32);
        }
    }
    if at_inf > 0 {
        // Q itself, as the root of θ with coordinates Q
        let a = AlgPoints::new(UniPoly::x(), [0, 1, 2].map(|i| UniPoly::constant(q[i].clone())));
        add(a, at_inf);
    }
    Ok(LineRestriction { line: geom::normalize(l), base: (p, q), points: pts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::geom::pt;
    use crate::exactmath::poly::XYZ;

    #[test]
    fn tangency_detected() {
        let (x, y, z) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2));
        let f = &(&y * &z.pow(5)) + &(&x.pow(2) * &z.pow(4));
        let c = PlaneCurve::from_equation(f).unwrap();
        let r = restrict_to_line(&c, &pt(0, 1, 0)).unwrap();
        assert_eq!(r.total(), 6);
        let at0 = r.points.iter().find(|p| p.location.is_point(&pt(0, 0, 1))).unwrap();
        assert_eq!(at0.multiplicity, 2);
        assert_eq!(at0.role, Role::Tangency);
    }

    #[test]
    fn component_line_rejected() {
        let (x, y) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1));
        let c = PlaneCurve::from_components(vec![x, y]).unwrap();
        assert_eq!(restrict_to_line(&c, &pt(1, 0, 0)), Err(CurveError::LineIsComponent));
    }
}
