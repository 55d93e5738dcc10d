//! H₊ as the overlattice of Pic(Ỹ)(2) spanned by half branch classes.

use super::{IntegralLattice, LatticeError, ResolutionModel};
use crate::exactmath::matrix::hermite_rows;
use crate::exactmath::{rational, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn invariant_lattice(model: &ResolutionModel) -> Result<IntegralLattice, LatticeError> {
    let n = model.rank();
    // everything is scaled by 2 so the half classes become integral rows
    let mut gens: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
    gens.extend(model.branch.iter().map(|b| b.class.clone()));
    let w = hermite_rows(&IntMatrix::from_i64(&gens));
    if w.rows() != n {
        return Err(LatticeError::RankDeficient);
    }
    let g = model.gram();
    let big = w.mul(&g).mul(&w.transpose());
    let two = BigInt::from(2);
    let mut rows = vec![];
    for i in 0..n {
        let mut row = vec![];
        for j in 0..n {
            let (q, r) = big[(i, j)].div_rem(&two);
            if !r.is_zero() {
                return Err(LatticeError::Model("half classes do not pair integrally".into()));
            }
            row.push(q);
        }
        rows.push(row);
    }
    let gram = IntMatrix::from_rows(rows);
    let det_w = w.det().abs();
    if det_w.is_zero() {
        return Err(LatticeError::RankDeficient);
    }
    let index = (BigInt::from(1) << n) / det_w;
    let basis = w.to_rows().iter().map(|r| r.iter().map(|x| rational::qi(x.clone()) / rational::q(2)).collect()).collect();
    Ok(IntegralLattice { gram, basis, overlattice_index: index })
}
