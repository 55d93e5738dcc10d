//! Sylvester resultants with fraction-free (Bareiss) determinants.

use super::poly::{PolyError, Poly};
use super::rational::{self, Rational};
use num_bigint::BigInt;
use super::upoly::UniPoly;
use num_traits::{One, Zero};

/// A commutative ring whose exact divisions can be carried out.
pub trait ExactRing: Clone {
    fn zero_el(&self) -> Self;
    fn one_el(&self) -> Self;
    fn is_zero_el(&self) -> bool;
    fn add_el(&self, o: &Self) -> Self;
    fn sub_el(&self, o: &Self) -> Self;
    fn mul_el(&self, o: &Self) -> Self;
    fn div_el(&self, o: &Self) -> Self;
}

impl ExactRing for Rational {
    fn zero_el(&self) -> Self { Rational::zero() }
    fn one_el(&self) -> Self { Rational::one() }
    fn is_zero_el(&self) -> bool { self.is_zero() }
    fn add_el(&self, o: &Self) -> Self { self + o }
    fn sub_el(&self, o: &Self) -> Self { self - o }
    fn mul_el(&self, o: &Self) -> Self { self * o }
    fn div_el(&self, o: &Self) -> Self { self / o }
}

impl ExactRing for UniPoly {
    fn zero_el(&self) -> Self { UniPoly::zero() }
    fn one_el(&self) -> Self { UniPoly::one() }
    fn is_zero_el(&self) -> bool { self.is_zero() }
    fn add_el(&self, o: &Self) -> Self { self + o }
    fn sub_el(&self, o: &Self) -> Self { self - o }
    fn mul_el(&self, o: &Self) -> Self { self * o }
    fn div_el(&self, o: &Self) -> Self { self.div_exact(o) }
}

impl ExactRing for Poly {
    fn zero_el(&self) -> Self { self.zero_like() }
    fn one_el(&self) -> Self { self.constant_like(Rational::one()) }
    fn is_zero_el(&self) -> bool { self.is_zero() }
    fn add_el(&self, o: &Self) -> Self { self + o }
    fn sub_el(&self, o: &Self) -> Self { self - o }
    fn mul_el(&self, o: &Self) -> Self { self * o }
    fn div_el(&self, o: &Self) -> Self { self.div_exact(o).expect("Bareiss division must be exact") }
}

/// Determinant by Bareiss elimination. `proto` supplies zero/one for empty input.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>, proto: &R) -> R {
    let n = m.len();
    if n == 0 {
        return proto.one_el();
    }
    let mut neg = false;
    let mut prev = proto.one_el();
    for k in 0..n - 1 {
        if m[k][k].is_zero_el() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_el()) {
                None => return proto.zero_el(),
                Some(i) => {
                    m.swap(i, k);
                    neg = !neg;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul_el(&m[k][k]).sub_el(&m[i][k].mul_el(&m[k][j]));
                m[i][j] = v.div_el(&prev);
            }
            m[i][k] = proto.zero_el();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg { proto.zero_el().sub_el(&d) } else { d }
}

/// Sylvester matrix of two coefficient lists (lowest degree first).
pub fn sylvester<R: ExactRing>(f: &[R], g: &[R], proto: &R) -> Vec<Vec<R>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = vec![vec![proto.zero_el(); size]; size];
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    s
}

/// Resultant of two polynomials given by coefficient lists in the eliminated
/// variable (lowest degree first, nonzero leading entries).
pub fn resultant_coeffs<R: ExactRing>(f: &[R], g: &[R], proto: &R) -> R {
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return pow_el(&f[0], n, proto);
    }
    if n == 0 {
        return pow_el(&g[0], m, proto);
    }
    bareiss_det(sylvester(f, g, proto), proto)
}

/// Resultant of polynomials with coefficients in ℚ[x], by evaluating the
/// Sylvester determinant at integer points and interpolating.
pub fn resultant_upoly(f: &[UniPoly], g: &[UniPoly]) -> UniPoly {
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m == 0 || n == 0 {
        return resultant_coeffs(f, g, &UniPoly::zero());
    }
    let dmax = |cs: &[UniPoly]| cs.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let bound = n * dmax(f) + m * dmax(g);
    // integral scalings F = c_f·f, G = c_g·g; Res(F, G) = c_f^n c_g^m Res(f, g)
    let integral = |cs: &[UniPoly]| {
        let den = rational::denom_lcm(cs.iter().flat_map(|c| c.coeffs().iter()));
        let ints: Vec<Vec<BigInt>> = cs.iter().map(|c| c.coeffs().iter().map(|a| (a * Rational::from_integer(den.clone())).to_integer()).collect()).collect();
        (den, ints)
    };
    let (cf, fi) = integral(f);
    let (cg, gi) = integral(g);
    let ev = |c: &[BigInt], x: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a);
    let ys: Vec<BigInt> = (0..=bound as i64)
        .map(|x| {
            let x = BigInt::from(x);
            let fe: Vec<BigInt> = fi.iter().map(|c| ev(c, &x)).collect();
            let ge: Vec<BigInt> = gi.iter().map(|c| ev(c, &x)).collect();
            bareiss_det_int(sylvester_int(&fe, &ge))
        })
        .collect();
    let scale = Rational::from_integer(num_traits::pow(cf, n) * num_traits::pow(cg, m));
    interpolate_naturals(&ys).scale(&(Rational::one() / scale))
}

/// Coefficients (s₁₀, s₁₁) of the first subresultant s₁₁·y + s₁₀ of f and g
/// (both of degree ≥ 2 in y, coefficients in ℚ[x]).
pub fn subresultant1_upoly(f: &[UniPoly], g: &[UniPoly]) -> (UniPoly, UniPoly) {
    let (m, n) = (f.len() - 1, g.len() - 1);
    assert!(m >= 2 && n >= 2, "first subresultant needs degrees ≥ 2");
    let dmax = |cs: &[UniPoly]| cs.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let bound = (n - 1) * dmax(f) + (m - 1) * dmax(g);
    let integral = |cs: &[UniPoly]| {
        let den = rational::denom_lcm(cs.iter().flat_map(|c| c.coeffs().iter()));
        let ints: Vec<Vec<BigInt>> = cs.iter().map(|c| c.coeffs().iter().map(|a| (a * Rational::from_integer(den.clone())).to_integer()).collect()).collect();
        (den, ints)
    };
    let (cf, fi) = integral(f);
    let (cg, gi) = integral(g);
    let ev = |c: &[BigInt], x: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a);
    let rows = m + n - 2;
    let mut v0 = vec![];
    let mut v1 = vec![];
    for x in 0..=bound as i64 {
        let x = BigInt::from(x);
        let fe: Vec<BigInt> = fi.iter().map(|c| ev(c, &x)).collect();
        let ge: Vec<BigInt> = gi.iter().map(|c| ev(c, &x)).collect();
        let mut full = vec![vec![BigInt::zero(); rows + 1]; rows];
        for i in 0..n - 1 {
            for (k, c) in fe.iter().rev().enumerate() {
                full[i][i + k] = c.clone();
            }
        }
        for i in 0..m - 1 {
            for (k, c) in ge.iter().rev().enumerate() {
                full[n - 1 + i][i + k] = c.clone();
            }
        }
        // column rows-1 holds y¹, column rows holds y⁰
        let pick = |col: usize| full.iter().map(|r| {
            let mut v = r[..rows - 1].to_vec();
            v.push(r[col].clone());
            v
        }).collect::<Vec<_>>();
        v1.push(bareiss_det_int(pick(rows - 1)));
        v0.push(bareiss_det_int(pick(rows)));
    }
    let scale = Rational::one() / Rational::from_integer(num_traits::pow(cf, n - 1) * num_traits::pow(cg, m - 1));
    (interpolate_naturals(&v0).scale(&scale), interpolate_naturals(&v1).scale(&scale))
}

fn sylvester_int(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    s
}

/// Fraction-free Gaussian elimination over ℤ.
pub fn bareiss_det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Interpolation through (k, ys[k]), k = 0..N, using forward differences:
/// N!·p(x) = Σ_j Δʲy₀·(N!/j!)·x(x−1)⋯(x−j+1).
pub fn interpolate_naturals(ys: &[BigInt]) -> UniPoly {
    let n = ys.len();
    if n == 0 {
        return UniPoly::zero();
    }
    let mut diffs = ys.to_vec();
    let mut delta = Vec::with_capacity(n);
    for _ in 0..n {
        delta.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let nfact: BigInt = (1..n as u64).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let mut acc = vec![BigInt::zero(); n];
    let mut falling = vec![BigInt::one()];
    let mut ratio = nfact.clone();
    for (j, d) in delta.iter().enumerate() {
        if j > 0 {
            // falling *= (x − (j−1)); ratio = N!/j!
            let c = BigInt::from(j as u64 - 1);
            let mut nx = vec![BigInt::zero(); falling.len() + 1];
            for (i, a) in falling.iter().enumerate() {
                nx[i + 1] += a;
                nx[i] -= a * &c;
            }
            falling = nx;
            ratio /= BigInt::from(j as u64);
        }
        if !d.is_zero() {
            let k = d * &ratio;
            for (i, a) in falling.iter().enumerate() {
                acc[i] += a * &k;
            }
        }
    }
    let inv = Rational::from_integer(nfact);
    UniPoly::new(acc.into_iter().map(|a| Rational::from_integer(a) / inv.clone()).collect())
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        p = &(&p * &UniPoly::new(vec![-xs[i].clone(), Rational::one()])) + &UniPoly::constant(dd[i].clone());
    }
    p
}

fn pow_el<R: ExactRing>(x: &R, n: usize, proto: &R) -> R {
    (0..n).fold(proto.one_el(), |acc, _| acc.mul_el(x))
}

/// Resultant eliminating the named variable.
pub fn resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Zero);
    }
    let i = f.var_index(var)?;
    g.var_index(var)?;
    let cf = f.coeffs_in(i);
    let cg = g.coeffs_in(i);
    let proto = f.zero_like();
    // use the univariate fast path when only one other variable occurs
    let others: Vec<usize> = (0..f.nvars()).filter(|&j| j != i && (f.degree_in(j).unwrap_or(0) > 0 || g.degree_in(j).unwrap_or(0) > 0)).collect();
    if others.len() == 1 {
        let k = others[0];
        let to_u = |cs: &[Poly]| cs.iter().map(|c| c.to_upoly(k).expect("univariate coefficient")).collect::<Vec<_>>();
        let r = resultant_upoly(&to_u(&cf), &to_u(&cg));
        let names: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
        return Ok(Poly::from_upoly(&names, k, &r));
    }
    Ok(resultant_coeffs(&cf, &cg, &proto))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    fn v(names: &[&str], i: usize) -> Poly {
        Poly::var(names, i)
    }

    #[test]
    fn examples() {
        let n = ["x", "y"];
        let (x, y) = (v(&n, 0), v(&n, 1));
        let one = Poly::constant(&n, q(1));
        assert!(resultant(&(&x - &one), &(&x - &one), "x").unwrap().is_zero());
        let r = resultant(&(&x.pow(2) - &y), &(&x - &y), "x").unwrap();
        assert_eq!(r, &y.pow(2) - &y);
        assert_eq!(resultant(&x, &y, "x").unwrap(), y);
        assert!(matches!(resultant(&x, &y, "w"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn interpolation_matches_bareiss() {
        let f = vec![UniPoly::from_ints(&[1, 2, 3]), UniPoly::from_ints(&[0, -1]), UniPoly::from_ints(&[5, 0, 0, 1])];
        let g = vec![UniPoly::from_ints(&[-2, 0, 1]), UniPoly::from_ints(&[7]), UniPoly::from_ints(&[1, 1])];
        assert_eq!(resultant_upoly(&f, &g), resultant_coeffs(&f, &g, &UniPoly::zero()));
        let p = UniPoly::from_ints(&[3, -1, 0, 2]);
        let ys: Vec<BigInt> = (0..6).map(|k| p.eval(&q(k)).to_integer()).collect();
        assert_eq!(interpolate_naturals(&ys), p);
    }

    #[test]
    fn first_subresultant_gives_common_root() {
        // f = (y - x)(y - 2), g = (y - x)(y + x + 5): common root y = x
        let f = vec![UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[-2, -1]), UniPoly::one()];
        let g = vec![UniPoly::from_ints(&[0, -5, -1]), UniPoly::from_ints(&[5]), UniPoly::one()];
        let (s0, s1) = subresultant1_upoly(&f, &g);
        // s1·x + s0 ≡ 0
        assert!((&(&s1 * &UniPoly::x()) + &s0).is_zero());
        assert!(!s1.is_zero());
    }

    #[test]
    fn trivariate_path() {
        let n = ["x", "y", "z"];
        let (x, y, z) = (v(&n, 0), v(&n, 1), v(&n, 2));
        // Sylvester rows [1, -y], [1, -z]: det = y - z
        let r = resultant(&(&x - &y), &(&x - &z), "x").unwrap();
        assert_eq!(r, &y - &z);
    }
}
