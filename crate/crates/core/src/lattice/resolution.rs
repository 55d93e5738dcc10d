//! The blow-up Ỹ → ℙ² resolving the branch sextic to a smooth curve.

use super::{BranchClass, Exceptional, LatticeError, ResolutionModel};
use crate::curves::{geom, PointSet, Pt, SingKind};
use crate::families::MarkedSextic;

struct Blowup {
    /// (component, multiplicity) at this exceptional class.
    hits: Vec<(usize, i64)>,
}

pub fn build_resolution(ms: &MarkedSextic) -> Result<ResolutionModel, LatticeError> {
    let locus = ms.locus()?;
    let comps = ms.curve.components();
    let mut symbols = vec!["h".to_string()];
    let mut exceptional = vec![];
    let mut blowups: Vec<Blowup> = vec![];
    let mut centrals: Vec<(usize, [usize; 3])> = vec![];
    let (mut nodes, mut triples) = (0, 0);

    for sp in &locus.points {
        match sp.kind {
            SingKind::Node => {
                let hits = match sp.components.as_slice() {
                    [k] => vec![(*k, 2)],
                    [k, l] => vec![(*k, 1), (*l, 1)],
                    _ => return Err(LatticeError::Unsupported(format!("node on {} components", sp.components.len()))),
                };
                for conj in 0..sp.degree() {
                    nodes += 1;
                    symbols.push(format!("e{}", symbols.len()));
                    exceptional.push(Exceptional::Node { location: sp.location.clone(), conj });
                    blowups.push(Blowup { hits: hits.clone() });
                }
            }
            SingKind::OrdinaryTriple => {
                let p = match &sp.location {
                    PointSet::Rational(p) => p.clone(),
                    PointSet::Cluster(_) => return Err(LatticeError::Unsupported("conjugate triple points".into())),
                };
                if sp.components.len() != 3 {
                    return Err(LatticeError::Unsupported("triple point with a singular branch component".into()));
                }
                // tangent line of each branch, sorted for a deterministic f-order
                let mut dirs: Vec<(Pt, usize)> = sp
                    .components
                    .iter()
                    .map(|&k| {
                        let f = &comps[k].factor;
                        let g: Pt = [f.diff(0).eval(&p), f.diff(1).eval(&p), f.diff(2).eval(&p)];
                        (geom::normalize(&g), k)
                    })
                    .collect();
                dirs.sort();
                if dirs.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(LatticeError::Unsupported("triple point with a repeated tangent".into()));
                }
                triples += 1;
                let base = symbols.len();
                let tag = triples;
                symbols.push(format!("e_t{tag}"));
                exceptional.push(Exceptional::TripleCenter { point: p.clone() });
                blowups.push(Blowup { hits: dirs.iter().map(|(_, k)| (*k, 1)).collect() });
                for (j, (t, k)) in dirs.iter().enumerate() {
                    symbols.push(format!("f{}_t{tag}", j + 1));
                    exceptional.push(Exceptional::TripleDirection { point: p.clone(), tangent: t.clone() });
                    blowups.push(Blowup { hits: vec![(*k, 1)] });
                }
                centrals.push((base, [base + 1, base + 2, base + 3]));
            }
            SingKind::Other => return Err(LatticeError::Unsupported(format!("Milnor number {}", sp.milnor))),
        }
    }

    let n = symbols.len();
    let mut branch = vec![];
    for (k, c) in comps.iter().enumerate() {
        let mut class = vec![0i64; n];
        class[0] = c.factor.total_degree().unwrap_or(0) as i64;
        for (i, b) in blowups.iter().enumerate() {
            for &(kk, mu) in &b.hits {
                if kk == k {
                    class[i + 1] -= mu;
                }
            }
        }
        branch.push(BranchClass { label: format!("C{}", k + 1), class, component: Some(k) });
    }
    for (t, (e, fs)) in centrals.iter().enumerate() {
        let mut class = vec![0i64; n];
        class[*e] = 1;
        for f in fs {
            class[*f] = -1;
        }
        branch.push(BranchClass { label: format!("T{}", t + 1), class, component: None });
    }

    let find = |q: &Pt| -> Result<usize, LatticeError> {
        exceptional
            .iter()
            .position(|x| matches!(x, Exceptional::Node { location, .. } if location.is_point(q)))
            .map(|i| i + 1)
            .ok_or_else(|| LatticeError::Model("marking point is not a rational node".into()))
    };
    let model = ResolutionModel { q1_index: find(&ms.q1)?, q2_index: find(&ms.q2)?, symbols, exceptional, branch, nodes, triples };
    check_model(&model)?;
    Ok(model)
}

/// Even squares, pairwise disjointness, and total class divisible by 2.
pub fn check_model(m: &ResolutionModel) -> Result<(), LatticeError> {
    if m.rank() != 1 + m.nodes + 4 * m.triples {
        return Err(LatticeError::Model("rank ≠ 1 + nodes + 4·triples".into()));
    }
    for (i, b) in m.branch.iter().enumerate() {
        let sq = m.dot(&b.class, &b.class);
        if sq % 2 != 0 {
            return Err(LatticeError::Model(format!("{} has odd square {sq}", b.label)));
        }
        for c in &m.branch[i + 1..] {
            if m.dot(&b.class, &c.class) != 0 {
                return Err(LatticeError::Model(format!("{} meets {}", b.label, c.label)));
            }
        }
    }
    let total: Vec<i64> = (0..m.rank()).map(|j| m.branch.iter().map(|b| b.class[j]).sum()).collect();
    if total.iter().any(|x| x % 2 != 0) {
        return Err(LatticeError::Model("branch divisor is not 2-divisible".into()));
    }
    Ok(())
}
