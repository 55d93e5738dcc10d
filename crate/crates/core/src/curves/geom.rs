//! Projective points, lines and coordinate changes over ℚ.

use crate::exactmath::field::Field;
use crate::exactmath::poly::{Poly, XYZ};
use crate::exactmath::rational::{self, Rational};
use num_traits::Zero;
use rand::Rng;

/// Homogeneous coordinates, or coefficients (a, b, c) of a line ax + by + cz.
pub type Pt = [Rational; 3];

pub fn pt(a: i64, b: i64, c: i64) -> Pt {
    [rational::q(a), rational::q(b), rational::q(c)]
}

/// Scale so the first nonzero coordinate is 1.
pub fn normalize<F: Field>(p: &[F; 3]) -> [F; 3] {
    let k = p.iter().position(|c| !c.is_zero()).expect("zero vector is not a projective point");
    let inv = p[k].inv();
    [p[0].clone() * inv.clone(), p[1].clone() * inv.clone(), p[2].clone() * inv]
}

pub fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<F: Field>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn det3<F: Field>(a: &[F; 3], b: &[F; 3], c: &[F; 3]) -> F {
    dot(a, &cross(b, c))
}

pub fn is_zero_vec<F: Field>(a: &[F; 3]) -> bool {
    a.iter().all(|c| c.is_zero())
}

pub fn same_point<F: Field>(a: &[F; 3], b: &[F; 3]) -> bool {
    is_zero_vec(&cross(a, b))
}

/// Line through two distinct points (normalized coefficients).
pub fn line_through<F: Field>(p: &[F; 3], q: &[F; 3]) -> [F; 3] {
    normalize(&cross(p, q))
}

/// Intersection of two distinct lines (normalized).
pub fn meet<F: Field>(l: &[F; 3], m: &[F; 3]) -> [F; 3] {
    normalize(&cross(l, m))
}

pub fn add<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [a[0].clone() + b[0].clone(), a[1].clone() + b[1].clone(), a[2].clone() + b[2].clone()]
}

pub fn scale<F: Field>(k: &F, a: &[F; 3]) -> [F; 3] {
    [k.clone() * a[0].clone(), k.clone() * a[1].clone(), k.clone() * a[2].clone()]
}

pub fn lift<F: Field + From<Rational>>(p: &Pt) -> [F; 3] {
    [F::from(p[0].clone()), F::from(p[1].clone()), F::from(p[2].clone())]
}

pub fn line_poly(l: &Pt) -> Poly {
    crate::exactmath::poly::linear_form(l)
}

/// Coefficients of a linear form, if `f` is one.
pub fn line_coeffs(f: &Poly) -> Option<Pt> {
    if f.total_degree() != Some(1) || !f.is_homogeneous() {
        return None;
    }
    Some([f.coeff(&[1, 0, 0]), f.coeff(&[0, 1, 0]), f.coeff(&[0, 0, 1])])
}

/// Two standard basis vectors completing p to a basis.
pub fn complement_basis(p: &Pt) -> (Pt, Pt) {
    let k = p.iter().position(|c| !c.is_zero()).expect("zero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let e = |i: usize| {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[i] = rational::q(1);
        v
    };
    (e(others[0]), e(others[1]))
}

/// Two points spanning the line l (deterministic choice).
pub fn line_points(l: &Pt) -> (Pt, Pt) {
    let k = l.iter().position(|c| !c.is_zero()).expect("zero line");
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    // points with coordinate k solved from the others
    let mk = |free: usize| {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[free] = l[k].clone();
        v[k] = -l[free].clone();
        normalize(&v)
    };
    (mk(i), mk(j))
}

pub type Mat3 = [[Rational; 3]; 3];

pub fn mat_from_i64(m: &[[i64; 3]; 3]) -> Mat3 {
    m.map(|r| r.map(rational::q))
}

pub fn mat_apply<F: Field + From<Rational>>(m: &Mat3, v: &[F; 3]) -> [F; 3] {
    let row = |i: usize| {
        F::from(m[i][0].clone()) * v[0].clone() + F::from(m[i][1].clone()) * v[1].clone() + F::from(m[i][2].clone()) * v[2].clone()
    };
    [row(0), row(1), row(2)]
}

pub fn mat_det(m: &Mat3) -> Rational {
    det3(&m[0], &m[1], &m[2])
}

pub fn mat_inverse(m: &Mat3) -> Option<Mat3> {
    let d = mat_det(m);
    if d.is_zero() {
        return None;
    }
    // columns of the inverse are cross products of rows
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    let mut inv: Mat3 = Default::default();
    for i in 0..3 {
        inv[i][0] = c0[i].clone() / d.clone();
        inv[i][1] = c1[i].clone() / d.clone();
        inv[i][2] = c2[i].clone() / d.clone();
    }
    Some(inv)
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).fold(Rational::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone());
        }
    }
    c
}

pub fn mat_transpose(a: &Mat3) -> Mat3 {
    let mut c: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[j][i].clone();
        }
    }
    c
}

/// The polynomial X ↦ f(M·X).
pub fn pullback(f: &Poly, m: &Mat3) -> Poly {
    let subs: Vec<Poly> = (0..3).map(|i| line_poly(&m[i])).collect();
    f.compose(&subs)
}

/// Random integer matrix of determinant ±1 with small entries.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> Mat3 {
    let mut lo = [[0i64; 3]; 3];
    let mut up = [[0i64; 3]; 3];
    for i in 0..3 {
        lo[i][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
        up[i][i] = 1;
        for j in 0..i {
            lo[i][j] = rng.gen_range(-3..=3);
            up[j][i] = rng.gen_range(-3..=3);
        }
    }
    let mut perm = [0usize, 1, 2];
    for i in (1..3).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut p = [[0i64; 3]; 3];
    for i in 0..3 {
        p[i][perm[i]] = 1;
    }
    mat_mul(&mat_mul(&mat_from_i64(&p), &mat_from_i64(&lo)), &mat_from_i64(&up))
}

/// Random invertible rational matrix with entries of bounded height.
pub fn random_invertible<R: Rng>(rng: &mut R, height: i64) -> Mat3 {
    loop {
        let mut m: Mat3 = Default::default();
        for row in m.iter_mut() {
            for c in row.iter_mut() {
                *c = rational::qf(rng.gen_range(-height..=height), 1);
            }
        }
        if !mat_det(&m).is_zero() {
            return m;
        }
    }
}

pub fn pt_to_json(p: &Pt) -> serde_json::Value {
    serde_json::json!(p.iter().map(rational::to_string).collect::<Vec<_>>())
}

pub fn pt_from_json(v: &serde_json::Value) -> Option<Pt> {
    let a = v.as_array()?;
    if a.len() != 3 {
        return None;
    }
    let mut out: Pt = Default::default();
    for (i, x) in a.iter().enumerate() {
        out[i] = rational::parse(x.as_str()?).ok()?;
    }
    if is_zero_vec(&out) {
        return None;
    }
    Some(out)
}

pub fn eval_at(f: &Poly, p: &Pt) -> Rational {
    f.eval(p)
}

pub fn xyz() -> [&'static str; 3] {
    XYZ
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn incidence() {
        let p = pt(1, 2, 3);
        let q = pt(4, 5, 6);
        let l = line_through(&p, &q);
        assert!(dot(&l, &p).is_zero() && dot(&l, &q).is_zero());
        let (a, b) = line_points(&l);
        assert!(dot(&l, &a).is_zero() && dot(&l, &b).is_zero() && !same_point(&a, &b));
    }

    #[test]
    fn unimodular() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_unimodular(&mut rng);
            let d = mat_det(&m);
            assert!(d == rational::q(1) || d == rational::q(-1));
            let mi = mat_inverse(&m).unwrap();
            assert_eq!(mat_mul(&m, &mi), mat_from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        }
    }
}
