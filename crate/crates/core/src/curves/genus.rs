//! Geometric genus of the components and irreducibility certificates.

use super::geom;
use super::singular::{singular_locus_certified, SingKind, SingularLocus};
use super::{CurveError, PlaneCurve};
use crate::exactmath::poly::Poly;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

/// (genus, degree) for every component.
pub fn geometric_genus(c: &PlaneCurve) -> Result<Vec<(i64, u32)>, CurveError> {
    let locus = singular_locus_certified(c, 0)?;
    genus_from_locus(c, &locus)
}

/// Same as [`geometric_genus`] with a locus already at hand.
pub fn genus_from_locus(c: &PlaneCurve, locus: &SingularLocus) -> Result<Vec<(i64, u32)>, CurveError> {
    let mut delta = vec![0i64; c.components().len()];
    for p in &locus.points {
        let k = p.degree() as i64;
        match (p.kind, p.components.len()) {
            (SingKind::Other, _) => return Err(CurveError::Unclassified),
            (SingKind::Node, 1) => delta[p.components[0]] += k,
            (SingKind::OrdinaryTriple, 1) => delta[p.components[0]] += 3 * k,
            (SingKind::OrdinaryTriple, 2) => {
                // one of the two components has a node there
                let mut found = false;
                for &j in &p.components {
                    let f = &c.components()[j].factor;
                    if (0..3).all(|i| p.location.all_on(&f.diff(i))) {
                        delta[j] += k;
                        found = true;
                    }
                }
                if !found {
                    return Err(CurveError::Unclassified);
                }
            }
            _ => {}
        }
    }
    Ok(c.components()
        .iter()
        .zip(delta)
        .map(|(comp, dl)| {
            let d = comp.factor.total_degree().unwrap_or(0) as i64;
            ((d - 1) * (d - 2) / 2 - dl, d as u32)
        })
        .collect())
}

/// Certify that a ternary form is irreducible over ℚ: some line restriction
/// is irreducible modulo some prime. `false` means "no certificate found".
pub fn certify_irreducible(f: &Poly, seed: u64) -> bool {
    let d = match f.total_degree() {
        Some(d) if d >= 1 => d as usize,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x1fed);
    let s = ["s"];
    let sv = Poly::var(&s, 0);
    for _ in 0..40 {
        let p = [0; 3].map(|_| crate::exactmath::rational::q(rng.gen_range(-9..=9)));
        let q = [0; 3].map(|_| crate::exactmath::rational::q(rng.gen_range(-9..=9)));
        if geom::is_zero_vec(&geom::cross(&p, &q)) {
            continue;
        }
        let subs: Vec<Poly> = (0..3).map(|i| &Poly::constant(&s, p[i].clone()) + &sv.scale(&q[i])).collect();
        let u = f.compose(&subs).to_upoly(0).expect("univariate");
        if u.is_zero() || u.deg() != d || u.coeff(0).is_zero() {
            continue;
        }
        if u.certify_irreducible(25) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::XYZ;
    use crate::exactmath::rational::q;

    #[test]
    fn genus_of_smooth_and_nodal() {
        let (x, y, z) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2));
        let fermat = &(&x.pow(6) + &y.pow(6)) + &z.pow(6);
        let c = PlaneCurve::from_equation(fermat.clone()).unwrap();
        assert_eq!(geometric_genus(&c).unwrap(), vec![(10, 6)]);
        assert!(certify_irreducible(&fermat, 1));
        let nodal = &(&(&y.pow(2) * &z) - &(&x.pow(2) * &z)) - &x.pow(3);
        let c = PlaneCurve::from_equation(nodal.clone()).unwrap();
        assert_eq!(geometric_genus(&c).unwrap(), vec![(0, 3)]);
        assert!(certify_irreducible(&nodal, 2));
        let reducible = &(&x + &y) * &(&x - &z.scale(&q(2)));
        assert!(!certify_irreducible(&reducible, 3));
    }
}
