//! Rational sextics as images of the conics K_t : xy = t·z² under a cubic
//! map Φ of ℙ². At t = 0 the conic splits into x = 0 and y = 0, and the image
//! into two rational cubics; the image of (0 : 0 : 1) is the crossing that
//! the nearby fibers smooth.
//!
//! Φ is chosen with Φ(1:0:0) = Φ(0:1:0), so the image of the base points of
//! the pencil is a node of every fiber, and with
//! Φ(1 : tα² : α) = λ·Φ(1 : tβ² : β), λ = (α/β)⁶, identically in t, so a
//! second node moves polynomially and tends to the node of the cubic Φ(y = 0).

use super::{PointFamily, XYZT};
use crate::curves::geom::{self, Pt};
use crate::exactmath::poly::Poly;
use crate::exactmath::resultant::{interpolate, resultant_upoly};
use crate::exactmath::{linalg, rational, Rational, UniPoly};
use crate::families::construct::{forms_with, monomials, rand_int, rand_q_avoiding};
use num_traits::{One, Zero};
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct CubicMap {
    /// Coefficients of Φ₀, Φ₁, Φ₂ in the order of `monomials(3)`.
    pub coeffs: [Vec<Rational>; 3],
    pub alpha: Rational,
    pub beta: Rational,
}

fn mono(m: &[u32; 3], p: &[Rational; 3]) -> Rational {
    (0..3).fold(Rational::one(), |a, i| a * num_traits::pow(p[i].clone(), m[i] as usize))
}

impl CubicMap {
    pub fn random<R: Rng>(rng: &mut R, h: i64) -> Result<CubicMap, String> {
        let alpha = rand_q_avoiding(rng, h, &[]);
        let beta = rand_q_avoiding(rng, h, &[alpha.clone(), -alpha.clone()]);
        // λ = (α/β)⁶ leaves y³ free; without it the t³ rows kill y³ and put
        // base points at (1:0:0), (0:1:0)
        let lambda = num_traits::pow(alpha.clone() / beta.clone(), 6);
        let mons = monomials(3);
        let mut rows = vec![];
        let (e0, e1) = (geom::pt(1, 0, 0), geom::pt(0, 1, 0));
        for j in 0..3 {
            let mut row = vec![Rational::zero(); 30];
            for (k, m) in mons.iter().enumerate() {
                row[10 * j + k] = mono(m, &e0) - mono(m, &e1);
            }
            rows.push(row);
            // Φ_j(1, tα², α) − λ·Φ_j(1, tβ², β), coefficient of t^e
            for e in 0..3u32 {
                let mut row = vec![Rational::zero(); 30];
                for (k, m) in mons.iter().enumerate() {
                    if m[1] == e {
                        let d = (2 * e + m[2]) as usize;
                        row[10 * j + k] = num_traits::pow(alpha.clone(), d) - lambda.clone() * num_traits::pow(beta.clone(), d);
                    }
                }
                rows.push(row);
            }
        }
        let ns = linalg::nullspace(&rows, 30);
        let mut c = vec![Rational::zero(); 30];
        for v in &ns {
            let k = rand_int(rng, 3);
            for i in 0..30 {
                c[i] += k.clone() * v[i].clone();
            }
        }
        let den = rational::denom_lcm(c.iter());
        let c: Vec<Rational> = c.into_iter().map(|x| x * Rational::from_integer(den.clone())).collect();
        let coeffs: [Vec<Rational>; 3] = std::array::from_fn(|j| c[10 * j..10 * j + 10].to_vec());
        if coeffs.iter().any(|v| v.iter().all(Zero::is_zero)) {
            return Err("a coordinate of Φ vanishes".into());
        }
        Ok(CubicMap { coeffs, alpha, beta })
    }

    pub fn apply(&self, p: &Pt) -> Pt {
        let mons = monomials(3);
        std::array::from_fn(|j| mons.iter().zip(&self.coeffs[j]).map(|(m, c)| c.clone() * mono(m, p)).fold(Rational::zero(), |a, b| a + b))
    }

    /// ψ_j(u) = Φ_j(t·u², 1, u): coefficient of u^k as a polynomial in t.
    fn psi(&self) -> [Vec<UniPoly>; 3] {
        let mons = monomials(3);
        std::array::from_fn(|j| {
            let mut cs = vec![vec![Rational::zero(); 4]; 7];
            for (m, c) in mons.iter().zip(&self.coeffs[j]) {
                cs[(2 * m[0] + m[2]) as usize][m[0] as usize] += c.clone();
            }
            cs.into_iter().map(UniPoly::new).collect()
        })
    }

    /// ψ at a fixed t, as polynomials in u.
    pub fn psi_at(&self, t: &Rational) -> [UniPoly; 3] {
        self.psi().map(|cs| UniPoly::new(cs.iter().map(|c| c.eval(t)).collect()))
    }

    /// Image of the line x = 0 (`which = 0`) or y = 0 (`which = 1`).
    pub fn line_image(&self, which: usize) -> Result<Poly, String> {
        let pts: Vec<Pt> = (0..12)
            .map(|s| {
                let p = if which == 0 { [Rational::zero(), rational::q(s), Rational::one()] } else { [rational::q(s), Rational::zero(), Rational::one()] };
                self.apply(&p)
            })
            .collect();
        if pts.iter().any(geom::is_zero_vec) {
            return Err("base point on a boundary line".into());
        }
        let cs = forms_with(3, &pts, &[]);
        if cs.len() != 1 {
            return Err(format!("image of a line is not a unique cubic ({} forms)", cs.len()));
        }
        Ok(cs[0].primitive())
    }

    /// The node common to all fibers.
    pub fn fixed_node(&self) -> Pt {
        geom::normalize(&self.apply(&geom::pt(1, 0, 0)))
    }

    /// The crossing of the two boundary cubics smoothed for t ≠ 0.
    pub fn smoothed(&self) -> Pt {
        geom::normalize(&self.apply(&geom::pt(0, 0, 1)))
    }

    /// Φ(1 : tα² : α).
    pub fn moving_node(&self) -> PointFamily {
        let mons = monomials(3);
        let num = std::array::from_fn(|j| {
            let mut cs = vec![Rational::zero(); 4];
            for (m, c) in mons.iter().zip(&self.coeffs[j]) {
                cs[m[1] as usize] += c.clone() * num_traits::pow(self.alpha.clone(), (2 * m[1] + m[2]) as usize);
            }
            UniPoly::new(cs)
        });
        PointFamily::polynomial(num)
    }

    /// F(x, y, z, t), primitive in t, vanishing on Φ(K_t): the resultant in u of
    /// a·ψ₀ − ψ₁ and b·ψ₀ − ψ₂ at x = 1, interpolated in a and b.
    pub fn family(&self) -> Result<Poly, String> {
        let psi = self.psi();
        let lead = |k: usize, s: &Rational| psi[0][6].scale(s) - psi[k][6].clone();
        let nodes = |k: usize| -> Vec<Rational> { (0..).map(rational::q).filter(|s| !lead(k, s).is_zero()).take(7).collect() };
        let (an, bn) = (nodes(1), nodes(2));
        let comb = |s: &Rational, k: usize| -> Vec<UniPoly> { (0..7).map(|e| psi[0][e].scale(s) - psi[k][e].clone()).collect() };
        // res[i][j] = Res(a_i, b_j) as a polynomial in t
        let res: Vec<Vec<UniPoly>> = an.iter().map(|a| bn.iter().map(|b| resultant_upoly(&comb(a, 1), &comb(b, 2))).collect()).collect();
        let dt = res.iter().flatten().filter_map(|p| p.degree()).max().ok_or("resultant vanishes identically")?;
        // coefficient of a^i b^j t^k
        let mut c = vec![vec![vec![Rational::zero(); dt + 1]; 7]; 7];
        for k in 0..=dt {
            let by_a: Vec<UniPoly> = (0..7).map(|i| interpolate(&bn, &res[i].iter().map(|p| p.coeff(k)).collect::<Vec<_>>())).collect();
            for j in 0..7 {
                let pa = interpolate(&an, &by_a.iter().map(|p| p.coeff(j)).collect::<Vec<_>>());
                for i in 0..7 {
                    c[i][j][k] = pa.coeff(i);
                }
            }
        }
        let mut content = UniPoly::zero();
        let mut cols: Vec<((usize, usize), UniPoly)> = vec![];
        for i in 0..7 {
            for j in 0..7 {
                let p = UniPoly::new(c[i][j].clone());
                if p.is_zero() {
                    continue;
                }
                if i + j > 6 {
                    return Err("image has degree above 6".into());
                }
                content = content.gcd(&p);
                cols.push(((i, j), p));
            }
        }
        if content.is_zero() {
            return Err("empty family".into());
        }
        let mut terms = vec![];
        for ((i, j), p) in cols {
            let q = p.div_exact(&content);
            for (k, a) in q.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    terms.push((vec![(6 - i - j) as u32, i as u32, j as u32, k as u32], a.clone()));
                }
            }
        }
        Ok(Poly::from_terms(&XYZT, terms).primitive())
    }
}

/// Implicit sextic of the fiber at a fixed t, from the parametrization.
pub fn fiber_by_implicitization(phi: &CubicMap, t: &Rational) -> Option<Poly> {
    crate::families::construct::implicitize_sextic(&phi.psi_at(t))
}
