//! (r, a, δ), the discriminant form, and fixed-locus data.

use super::{FixedLocusData, IntegralLattice, LatticeError, NikulinInvariant, ResolutionModel};
use crate::curves::genus::genus_from_locus;
use crate::exactmath::linalg;
use crate::exactmath::matrix::smith_normal_form;
use crate::exactmath::{rational, Rational};
use crate::families::MarkedSextic;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn check_even(l: &IntegralLattice) -> Result<(), LatticeError> {
    let g = &l.gram;
    if !g.is_symmetric() || (0..g.rows()).any(|i| g[(i, i)].is_odd()) {
        return Err(LatticeError::Model("Gram is not even symmetric".into()));
    }
    if g.det().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    Ok(())
}

fn gram_q(l: &IntegralLattice) -> Vec<Vec<Rational>> {
    l.gram.to_rows().into_iter().map(|r| r.into_iter().map(rational::qi).collect()).collect()
}

fn norm(g: &[Vec<Rational>], y: &[Rational]) -> Rational {
    let gy = linalg::mat_vec(&g.to_vec(), y);
    y.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// q(x) reduced into [0, 2).
pub fn mod2(x: &Rational) -> Rational {
    let two = rational::q(2);
    let k = (x / &two).floor();
    x - k * two
}

/// Generators V·eᵢ/dᵢ of L∨/L together with their norms mod 2.
pub fn discriminant_form(l: &IntegralLattice) -> Result<Vec<(Vec<Rational>, Rational)>, LatticeError> {
    check_even(l)?;
    let (_, d, v) = smith_normal_form(&l.gram);
    let g = gram_q(l);
    let n = l.rank();
    let mut out = vec![];
    for i in 0..n {
        let di = d[(i, i)].clone();
        if di.is_one() {
            continue;
        }
        let y: Vec<Rational> = (0..n).map(|j| rational::qi(v[(j, i)].clone()) / rational::qi(di.clone())).collect();
        let q = mod2(&norm(&g, &y));
        out.push((y, q));
    }
    Ok(out)
}

pub fn lattice_invariants(l: &IntegralLattice) -> Result<NikulinInvariant, LatticeError> {
    check_even(l)?;
    let (_, d, _) = smith_normal_form(&l.gram);
    let two = BigInt::from(2);
    let mut a = 0;
    for i in 0..l.rank() {
        let di = &d[(i, i)];
        if *di == two {
            a += 1;
        } else if !di.is_one() {
            return Err(LatticeError::NotTwoElementary(di.clone()));
        }
    }
    let delta = u32::from(discriminant_form(l)?.iter().any(|(_, q)| !q.is_integer()));
    let (pos, neg, _) = linalg::signature(&gram_q(l));
    Ok(NikulinInvariant { r: l.rank() as u32, a, delta, signature: (pos as u32, neg as u32) })
}

pub fn nikulin_region_check(inv: &NikulinInvariant) -> bool {
    let (r, a) = (inv.r, inv.a);
    (1..=20).contains(&r) && a <= r && r + a <= 22 && r % 2 == a % 2
}

pub fn fixed_locus_predict(inv: &NikulinInvariant) -> Result<FixedLocusData, LatticeError> {
    let (r, a, d) = inv.triple();
    if !nikulin_region_check(inv) {
        return Err(LatticeError::Region(r, a, d));
    }
    if r == 10 && d == 0 && (a == 10 || a == 8) {
        return Err(LatticeError::Excluded(r, a, d));
    }
    Ok(FixedLocusData { g: 11 - (r + a) / 2, k: (r - a) / 2 })
}

/// Rank, a and signature of the orthogonal complement in the K3 lattice.
pub fn complement_invariants(inv: &NikulinInvariant) -> Result<(u32, u32, (u32, u32)), LatticeError> {
    if !nikulin_region_check(inv) {
        let (r, a, d) = inv.triple();
        return Err(LatticeError::Region(r, a, d));
    }
    Ok((22 - inv.r, inv.a, (2, 20 - inv.r)))
}

/// Genus and count of the branch curves on Ỹ, read off the geometry.
pub fn fixed_locus_geometric(ms: &MarkedSextic, model: &ResolutionModel) -> Result<FixedLocusData, LatticeError> {
    let genera = genus_from_locus(&ms.curve, ms.locus()?)?;
    let mut positive = vec![];
    for b in &model.branch {
        let g = match b.component {
            Some(k) => genera[k].0,
            None => 0,
        };
        if g < 0 {
            return Err(LatticeError::Model(format!("{} has negative genus", b.label)));
        }
        if g > 0 {
            positive.push(g);
        }
    }
    if positive.len() > 1 {
        return Err(LatticeError::TwoPositiveGenus);
    }
    let g = positive.first().copied().unwrap_or(0) as u32;
    Ok(FixedLocusData { g, k: model.branch.len() as u32 - 1 })
}
