//! Arithmetic in (ℚ[x]/h)[y] for square-free h, splitting h whenever a
//! zero divisor shows up (dynamic evaluation).

use super::upoly::UniPoly;

/// Polynomial in y with coefficients in ℚ[x]/h, lowest degree first.
pub type YPoly = Vec<UniPoly>;

pub fn reduce(h: &UniPoly, p: &[UniPoly]) -> YPoly {
    let mut v: YPoly = p.iter().map(|c| c.rem(h)).collect();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Split h into (factor where p ≡ 0, factor where p is a unit). Either part
/// may be the constant 1.
pub fn split_by(h: &UniPoly, p: &UniPoly) -> (UniPoly, UniPoly) {
    let g = h.gcd(&p.rem_up_to_scale(h));
    if g.is_zero() {
        return (h.monic(), UniPoly::one());
    }
    let other = h.div_exact(&g).monic();
    (g, other)
}

enum Monic {
    Done(YPoly),
    Split(UniPoly),
}

fn make_monic(h: &UniPoly, p: &YPoly) -> Monic {
    let p = reduce(h, p);
    if p.is_empty() {
        return Monic::Done(p);
    }
    let lc = p.last().unwrap();
    match lc.inverse_mod(h) {
        Ok(inv) => Monic::Done(p.iter().map(|c| (c * &inv).rem(h)).collect()),
        Err(g) => Monic::Split(g),
    }
}

/// a mod b, b monic.
fn yrem(h: &UniPoly, a: &YPoly, b: &YPoly) -> YPoly {
    let mut r = reduce(h, a);
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k].clone();
        for (j, bc) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = (&r[idx] - &(&c * bc)).rem(h);
        }
        r = reduce(h, &r);
    }
    r
}

/// Monic gcd of a and b over each factor of h. Returns a list of
/// (h_i, gcd_i) with ∏ h_i = h (monic).
pub fn ygcd(h: &UniPoly, a: &YPoly, b: &YPoly) -> Vec<(UniPoly, YPoly)> {
    if h.deg() == 0 {
        return vec![];
    }
    let (mut x, mut y) = (reduce(h, a), reduce(h, b));
    loop {
        if y.is_empty() {
            return match make_monic(h, &x) {
                Monic::Done(m) => vec![(h.monic(), m)],
                Monic::Split(g) => split_and_recurse(h, &g, a, b),
            };
        }
        let ym = match make_monic(h, &y) {
            Monic::Done(m) => m,
            Monic::Split(g) => return split_and_recurse(h, &g, a, b),
        };
        let r = yrem(h, &x, &ym);
        x = ym;
        y = r;
    }
}

fn split_and_recurse(h: &UniPoly, g: &UniPoly, a: &YPoly, b: &YPoly) -> Vec<(UniPoly, YPoly)> {
    let g = g.monic();
    let other = h.div_exact(&g).monic();
    let mut out = ygcd(&g, a, b);
    out.extend(ygcd(&other, a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    #[test]
    fn gcd_over_split_modulus() {
        // h = (x-1)(x^2-2); a = (y - x)(y + 1), b = (y - x)(y - x^2)
        let h = &UniPoly::linear_root(&q(1)) * &UniPoly::from_ints(&[-2, 0, 1]);
        let ymx = vec![-&UniPoly::x(), UniPoly::one()];
        let a = vec![-&UniPoly::x(), &UniPoly::one() - &UniPoly::x(), UniPoly::one()];
        let x2 = UniPoly::x().pow(2);
        let b = vec![&UniPoly::x() * &x2, -&(&UniPoly::x() + &x2), UniPoly::one()];
        let parts = ygcd(&h, &a, &b);
        let total = parts.iter().fold(UniPoly::one(), |acc, (hi, _)| &acc * hi);
        assert_eq!(total, h.monic());
        for (hi, g) in &parts {
            if hi.deg() == 1 {
                // at x = 1: a = (y-1)(y+1), b = (y-1)^2
                assert_eq!(g, &vec![UniPoly::constant(q(-1)), UniPoly::one()]);
            } else {
                assert_eq!(reduce(hi, g), reduce(hi, &ymx));
            }
        }
    }
}
