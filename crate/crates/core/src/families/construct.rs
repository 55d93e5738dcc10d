//! Building blocks for the generators: forms through assigned points,
//! the parametrized nodal cubic and conic, implicitization.

use crate::curves::geom::{self, Mat3, Pt};
use crate::curves::PointSet;
use crate::exactmath::linalg;
use crate::exactmath::poly::{Poly, XYZ};
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::upoly::UniPoly;
use num_traits::{One, Zero};
use rand::Rng;

/// Exponent vectors of ternary forms of degree d.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut v = vec![];
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            v.push([a, b, d - a - b]);
        }
    }
    v
}

pub fn form_from_coeffs(d: u32, c: &[Rational]) -> Poly {
    let mons = monomials(d);
    assert_eq!(mons.len(), c.len());
    Poly::from_terms(&XYZ, mons.iter().zip(c).map(|(m, x)| (m.to_vec(), x.clone())))
}

pub fn coeffs_of_form(d: u32, f: &Poly) -> Vec<Rational> {
    monomials(d).iter().map(|m| f.coeff(m)).collect()
}

fn mono_value(m: &[u32; 3], p: &Pt) -> Rational {
    (0..3).fold(Rational::one(), |acc, i| acc * num_traits::pow(p[i].clone(), m[i] as usize))
}

/// Row of the linear condition f(p) = 0.
pub fn eval_row(d: u32, p: &Pt) -> Vec<Rational> {
    monomials(d).iter().map(|m| mono_value(m, p)).collect()
}

/// Rows of the conditions ∂f/∂x_i (p) = 0.
pub fn grad_rows(d: u32, p: &Pt) -> Vec<Vec<Rational>> {
    (0..3)
        .map(|i| {
            monomials(d)
                .iter()
                .map(|m| {
                    if m[i] == 0 {
                        return Rational::zero();
                    }
                    let mut e = *m;
                    e[i] -= 1;
                    rational::q(m[i] as i64) * mono_value(&e, p)
                })
                .collect()
        })
        .collect()
}

/// Basis of the forms of degree d passing through `through` and singular at `sing`.
pub fn forms_with(d: u32, through: &[Pt], sing: &[Pt]) -> Vec<Poly> {
    let mut rows = vec![];
    for p in through {
        rows.push(eval_row(d, p));
    }
    for p in sing {
        rows.extend(grad_rows(d, p));
    }
    let n = monomials(d).len();
    if rows.is_empty() {
        return (0..n).map(|i| {
            let mut c = vec![Rational::zero(); n];
            c[i] = Rational::one();
            form_from_coeffs(d, &c)
        }).collect();
    }
    linalg::nullspace(&rows, n).iter().map(|v| form_from_coeffs(d, v)).collect()
}

/// Rows of f = 0 on every point of the set: one per coefficient of f(θ) mod h(θ).
fn set_rows(d: u32, set: &PointSet, f_of: impl Fn(&Poly) -> Poly) -> Vec<Vec<Rational>> {
    match set {
        PointSet::Rational(p) => vec![monomials(d).iter().map(|m| f_of(&form_from_coeffs(d, &unit(d, m))).eval(p)).collect()],
        PointSet::Cluster(a) => {
            let vals: Vec<UniPoly> = monomials(d).iter().map(|m| a.eval(&f_of(&form_from_coeffs(d, &unit(d, m))))).collect();
            (0..a.degree()).map(|k| vals.iter().map(|v| v.coeff(k)).collect()).collect()
        }
    }
}

fn unit(d: u32, m: &[u32; 3]) -> Vec<Rational> {
    monomials(d).iter().map(|x| if x == m { Rational::one() } else { Rational::zero() }).collect()
}

/// [`forms_with`] for sets of conjugate points.
pub fn forms_with_sets(d: u32, through: &[PointSet], sing: &[PointSet]) -> Vec<Poly> {
    let mut rows = vec![];
    for s in through {
        rows.extend(set_rows(d, s, |f| f.clone()));
    }
    for s in sing {
        for i in 0..3 {
            rows.extend(set_rows(d, s, |f| f.diff(i)));
        }
    }
    let n = monomials(d).len();
    linalg::nullspace(&rows, n).iter().map(|v| form_from_coeffs(d, v)).collect()
}

pub fn rand_q<R: Rng>(rng: &mut R, height: i64) -> Rational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height.max(1));
    rational::qf(n, d)
}

pub fn rand_int<R: Rng>(rng: &mut R, height: i64) -> Rational {
    rational::q(rng.gen_range(-height..=height))
}

pub fn rand_point<R: Rng>(rng: &mut R, height: i64) -> Pt {
    loop {
        let p = [rand_int(rng, height), rand_int(rng, height), rand_int(rng, height)];
        if !geom::is_zero_vec(&p) {
            return geom::normalize(&p);
        }
    }
}

/// Random nonzero rational avoiding the listed values.
pub fn rand_q_avoiding<R: Rng>(rng: &mut R, height: i64, avoid: &[Rational]) -> Rational {
    loop {
        let x = rand_q(rng, height);
        if !x.is_zero() && !avoid.contains(&x) {
            return x;
        }
    }
}

/// Random linear combination (small integer weights) of a basis.
pub fn random_member<R: Rng>(rng: &mut R, basis: &[Poly], height: i64) -> Option<Poly> {
    if basis.is_empty() {
        return None;
    }
    let mut f = basis[0].zero_like();
    for b in basis {
        f = &f + &b.scale(&rand_int(rng, height));
    }
    if f.is_zero() {
        None
    } else {
        Some(f.primitive())
    }
}

/// X ↦ f(M⁻¹ X): the image of V(f) under the projectivity M.
pub fn transform_form(f: &Poly, m: &Mat3) -> Poly {
    let mi = geom::mat_inverse(m).expect("invertible transformation");
    geom::pullback(f, &mi).primitive()
}

/// Image of a line under M (coefficients transform by M⁻ᵀ).
pub fn transform_line(l: &Pt, m: &Mat3) -> Pt {
    let mi = geom::mat_inverse(m).expect("invertible transformation");
    geom::normalize(&geom::mat_apply(&geom::mat_transpose(&mi), l))
}

pub fn transform_point(p: &Pt, m: &Mat3) -> Pt {
    geom::normalize(&geom::mat_apply(m, p))
}

/// The standard nodal cubic y²z = x²(x + z), node at [0:0:1].
pub fn standard_nodal_cubic() -> Poly {
    let (x, y, z) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2));
    &(&x.pow(2) * &(&x + &z)) - &(&y.pow(2) * &z)
}

/// Point of the standard nodal cubic with group parameter u ≠ 0, ∞.
/// Three points are collinear iff the product of their u is 1; six lie on a
/// conic iff the product is 1, and so on; u = 1 is the flex at infinity.
pub fn nodal_point(u: &Rational) -> Pt {
    let one = Rational::one();
    let t = one.clone() + u.clone();
    let s = one - u.clone();
    let t2s2 = t.clone() * t.clone() - s.clone() * s.clone();
    geom::normalize(&[s.clone() * t2s2.clone(), t * t2s2, s.clone() * s.clone() * s])
}

/// Point (s² : st : t²) of the conic y² = xz at parameter s/t = a (a = ∞ allowed as None).
pub fn conic_point(a: Option<&Rational>) -> Pt {
    match a {
        None => geom::pt(0, 0, 1),
        Some(a) => geom::normalize(&[a.clone() * a.clone(), a.clone(), Rational::one()]),
    }
}

pub fn standard_conic() -> Poly {
    let (x, y, z) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2));
    &y.pow(2) - &(&x * &z)
}

/// Implicit equation of the image of a map ℙ¹ → ℙ² of degree 6 given by
/// three binary sextics (as polynomials in t with s = 1, degree ≤ 6).
pub fn implicitize_sextic(phi: &[UniPoly; 3]) -> Option<Poly> {
    let mons = monomials(6);
    // pw[i][k] = phi_i^k, as degree-6k forms dehomogenized at s = 1
    let mut pw: Vec<Vec<UniPoly>> = vec![];
    for f in phi {
        let mut v = vec![UniPoly::one()];
        for k in 1..=6 {
            let nx = &v[k - 1] * f;
            v.push(nx);
        }
        pw.push(v);
    }
    let cols: Vec<UniPoly> = mons.iter().map(|m| &(&pw[0][m[0] as usize] * &pw[1][m[1] as usize]) * &pw[2][m[2] as usize]).collect();
    let rows: Vec<Vec<Rational>> = (0..=36).map(|k| cols.iter().map(|c| c.coeff(k)).collect()).collect();
    let ns = linalg::nullspace(&rows, mons.len());
    if ns.len() != 1 {
        return None;
    }
    Some(form_from_coeffs(6, &ns[0]).primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};

    #[test]
    fn nodal_cubic_group_law() {
        let c = standard_nodal_cubic();
        let us = [q(2), qf(-1, 3), qf(3, 2)];
        for u in &us {
            assert!(c.eval(&nodal_point(u)).is_zero());
        }
        // 2 · (-1/3) · (3/2) = -1 ≠ 1: not collinear; adjust the third
        let u3 = q(1) / (us[0].clone() * us[1].clone());
        let (a, b, d) = (nodal_point(&us[0]), nodal_point(&us[1]), nodal_point(&u3));
        assert!(geom::det3(&a, &b, &d).is_zero());
        assert!(!geom::det3(&a, &b, &nodal_point(&us[2])).is_zero());
    }

    #[test]
    fn forms_through_points() {
        let pts: Vec<Pt> = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)].iter().map(|&(a, b, c)| geom::pt(a, b, c)).collect();
        let conics = forms_with(2, &pts, &[]);
        assert_eq!(conics.len(), 1);
        for p in &pts {
            assert!(conics[0].eval(p).is_zero());
        }
        let sing = forms_with(3, &[], &[geom::pt(0, 0, 1)]);
        assert_eq!(sing.len(), 7);
        let sets: Vec<PointSet> = pts.iter().cloned().map(PointSet::Rational).collect();
        assert_eq!(forms_with_sets(2, &sets, &[]), conics);
    }

    #[test]
    fn forms_through_a_conjugate_pair() {
        use crate::curves::AlgPoints;
        // (θ : 1 : 0) with θ² = 2, and the rational point (0 : 0 : 1)
        let h = UniPoly::from_ints(&[-2, 0, 1]);
        let pair = PointSet::Cluster(AlgPoints::new(h, [UniPoly::x(), UniPoly::one(), UniPoly::zero()]));
        let lines = forms_with_sets(1, &[pair.clone()], &[]);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].primitive(), geom::line_poly(&geom::pt(0, 0, 1)).primitive());
        // conics singular along both points: the double line z²
        let cs = forms_with_sets(2, &[], &[pair]);
        assert_eq!(cs.len(), 1);
    }
}
