//! Normal form of the r = 18 configuration on ℙ¹×ℙ¹.
//!
//! Lines through p₁ = L₁∩L₂ are coordinatized so that L₂ ↦ 0, L₁ ↦ 1 and the
//! line p₁p₂ ↦ ∞; likewise at p₂ = L₄∩L₅ with L₅ ↦ 0, L₄ ↦ 1. The pair
//! (λ₁, λ₂) are the coordinates of L₃ and L₆.

use super::{FamilyError, MarkedSextic, Parts};
use crate::curves::geom::{self, Mat3, Pt};
use crate::exactmath::linalg;
use crate::exactmath::rational::Rational;
use num_traits::{One, Zero};

/// β/α for ℓ = α·a + β·b; None when ℓ ∉ span(a, b) or ℓ ∝ b.
fn pencil_ratio(l: &Pt, a: &Pt, b: &Pt) -> Option<Rational> {
    let m: Vec<Vec<Rational>> = (0..3).map(|i| vec![a[i].clone(), b[i].clone()]).collect();
    let s = linalg::solve(&m, l)?;
    if s[0].is_zero() {
        return None;
    }
    Some(s[1].clone() / s[0].clone())
}

fn pencil_coordinate(p: &Pt, zero: &Pt, one: &Pt, inf: &Pt, l: &Pt) -> Result<Rational, FamilyError> {
    let degenerate = || FamilyError::Degenerate("line configuration does not determine the normal form".into());
    for m in [zero, one, l] {
        if !geom::dot(m, p).is_zero() {
            return Err(degenerate());
        }
    }
    let r1 = pencil_ratio(one, zero, inf).filter(|r| !r.is_zero()).ok_or_else(degenerate)?;
    let rl = pencil_ratio(l, zero, inf).ok_or_else(degenerate)?;
    Ok(rl / r1)
}

pub fn p1p1_normal_form(ms: &MarkedSextic) -> Result<(Rational, Rational), FamilyError> {
    let l = match (&ms.parts, ms.r) {
        (Parts::Lines { lines }, 18) => lines,
        _ => return Err(FamilyError::Degenerate("normal form needs an r = 18 instance".into())),
    };
    let p1 = geom::meet(&l[0], &l[1]);
    let p2 = geom::meet(&l[3], &l[4]);
    if geom::is_zero_vec(&p1) || geom::is_zero_vec(&p2) || geom::same_point(&p1, &p2) {
        return Err(FamilyError::Degenerate("coincident lines or triple points".into()));
    }
    let p = geom::line_through(&p1, &p2);
    let l1 = pencil_coordinate(&p1, &l[1], &l[0], &p, &l[2])?;
    let l2 = pencil_coordinate(&p2, &l[4], &l[3], &p, &l[5])?;
    let bad = |x: &Rational| x.is_zero() || x.is_one();
    if bad(&l1) || bad(&l2) {
        return Err(FamilyError::Degenerate("λ in {0, 1}".into()));
    }
    Ok((l1, l2))
}

/// The r = 18 instance with normal form (λ₁, λ₂), moved by the projectivity m.
pub fn instance_from_lambdas(l1: &Rational, l2: &Rational, m: &Mat3, seed: u64) -> Result<MarkedSextic, FamilyError> {
    let one = Rational::one();
    let zero = Rational::zero();
    if l1.is_zero() || l1.is_one() || l2.is_zero() || l2.is_one() {
        return Err(FamilyError::Degenerate("λ in {0, 1}".into()));
    }
    if geom::mat_det(m).is_zero() {
        return Err(FamilyError::Degenerate("singular transformation".into()));
    }
    let std: [Pt; 6] = [
        [zero.clone(), one.clone(), -one.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), one.clone(), -l1.clone()],
        [one.clone(), zero.clone(), -one.clone()],
        [one.clone(), zero.clone(), zero.clone()],
        [one.clone(), zero.clone(), -l2.clone()],
    ];
    let lines: [Pt; 6] = std.map(|l| super::construct::transform_line(&l, m));
    let q1 = geom::meet(&lines[0], &lines[3]);
    let q2 = geom::meet(&lines[1], &lines[4]);
    MarkedSextic::new(18, Parts::Lines { lines }, q1, q2, seed)
}

