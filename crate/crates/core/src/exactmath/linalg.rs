//! Dense linear algebra over an exact field.

use super::field::Field;
use super::rational::Rational;
use num_traits::{Signed, Zero};

pub type Matrix<F> = Vec<Vec<F>>;

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut pr = 0;
    for j in 0..cols {
        if pr == rows {
            break;
        }
        let Some(i) = (pr..rows).find(|&i| !m[i][j].is_zero()) else { continue };
        m.swap(pr, i);
        let inv = m[pr][j].inv();
        for k in j..cols {
            m[pr][k] = m[pr][k].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == pr || m[i][j].is_zero() {
                continue;
            }
            let f = m[i][j].clone();
            for k in j..cols {
                let v = m[i][k].clone() - f.clone() * m[pr][k].clone();
                m[i][k] = v;
            }
        }
        pivots.push(j);
        pr += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {v : M v = 0}.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|j| !piv.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solve M x = b; `None` if inconsistent. Free variables are set to 0.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Matrix<F> = m.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let piv = rref(&mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut a: Matrix<F> = m.iter().enumerate().map(|(i, r)| {
        let mut r = r.clone();
        r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
        r
    }).collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut d = F::one();
    for j in 0..n {
        let Some(i) = (j..n).find(|&i| !a[i][j].is_zero()) else { return F::zero() };
        if i != j {
            a.swap(i, j);
            d = -d;
        }
        d = d * a[j][j].clone();
        let inv = a[j][j].inv();
        for i in j + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let f = a[i][j].clone() * inv.clone();
            for k in j..n {
                let v = a[i][k].clone() - f.clone() * a[j][k].clone();
                a[i][k] = v;
            }
        }
    }
    d
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter().map(|r| (0..m).map(|j| r.iter().zip(b).fold(F::zero(), |acc, (x, br)| acc + x.clone() * br[j].clone())).collect()).collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter().map(|r| r.iter().zip(v).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())).collect()
}

/// Signature (n₊, n₋, n₀) of a symmetric rational matrix by congruence diagonalization.
pub fn signature(m: &Matrix<Rational>) -> (usize, usize, usize) {
    let n = m.len();
    let mut a = m.clone();
    let mut diag = vec![];
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for r in a.iter_mut() {
                    r.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j makes a[k][k] = 2 a[k][j] ≠ 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let p = a[k][k].clone();
        diag.push(p.clone());
        if p.is_zero() {
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / p.clone();
            for c in k..n {
                let v = a[k][c].clone() * f.clone();
                a[i][c] -= v;
            }
            for r in k..n {
                let v = a[r][k].clone() * f.clone();
                a[r][i] -= v;
            }
        }
    }
    let pos = diag.iter().filter(|x| x.is_positive()).count();
    let neg = diag.iter().filter(|x| x.is_negative()).count();
    (pos, neg, n - pos - neg)
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn is_one<F: Field>(x: &F) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn basics() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|x| x.is_zero()));
        let b = m(&[&[2, 1], &[1, 1]]);
        let bi = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &bi), identity(2));
        assert_eq!(det(&b), q(1));
        assert_eq!(solve(&b, &[q(3), q(2)]), Some(vec![q(1), q(1)]));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&m(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, -2]])), (1, 2, 0));
        assert_eq!(signature(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])), (1, 1, 1));
        assert_eq!(signature(&m(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
    }
}
