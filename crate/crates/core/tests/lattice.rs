use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use sextic_core::curves::geom::pt;
use sextic_core::exactmath::rational::{q, qf};
use sextic_core::exactmath::{IntMatrix, Rational};
use sextic_core::families::*;
use sextic_core::lattice::*;

mod common;
use common::{brute, corpus};

fn inv(r: u32, a: u32, delta: u32) -> NikulinInvariant {
    NikulinInvariant { r, a, delta, signature: (1, r - 1) }
}

fn diag_lattice(d: &[i64]) -> IntegralLattice {
    let n = d.len();
    IntegralLattice::from_gram(IntMatrix::from_i64(&(0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect::<Vec<_>>()))
}

#[test]
fn every_family_has_the_expected_invariants() {
    let rows: Vec<_> = (3..=18u32)
        .into_par_iter()
        .map(|r| {
            let ms = generate_instance(r, 1).unwrap();
            (r, analyze(&ms).unwrap_or_else(|e| panic!("r = {r}: {e}")))
        })
        .collect();
    for (r, rep) in rows {
        assert_eq!(rep.invariants.triple(), expected_invariants(r), "r = {r}");
        assert_eq!(rep.invariants.signature, (1, r - 1), "r = {r}");
        assert_eq!(rep.model.rank() as u32, r);
        assert_eq!(rep.predicted.clone().unwrap(), rep.fixed_locus, "r = {r}");
        // index = 2^(c−1), and det(Pic(2)) = det(H₊)·index²
        let c = rep.model.branch.len();
        assert_eq!(rep.lattice.overlattice_index, BigInt::one() << (c - 1), "r = {r}");
        let det = rep.lattice.gram.det().abs();
        assert_eq!(&det * &rep.lattice.overlattice_index * &rep.lattice.overlattice_index, BigInt::one() << r as usize, "r = {r}");
        let [e1, e2, l] = rep.model.marking_classes();
        assert_eq!(rep.model.dot(&e1, &e1), -1);
        assert_eq!(rep.model.dot(&e2, &e2), -1);
        assert_eq!(rep.model.dot(&l, &l), -1);
    }
}

#[test]
fn resolution_examples() {
    // six general lines
    let lines = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, -3, 5]].map(|l| pt(l[0], l[1], l[2]));
    let ms = MarkedSextic::new(16, Parts::Lines { lines }, pt(0, 0, 1), pt(1, 0, 0), 0).unwrap();
    let m = build_resolution(&ms).unwrap();
    assert_eq!(m.rank(), 16);
    for b in &m.branch {
        assert_eq!(m.dot(&b.class, &b.class), -4);
        assert_eq!(b.class[0], 1);
        assert_eq!(b.class.iter().filter(|&&x| x == -1).count(), 5);
    }
    let l = invariant_lattice(&m).unwrap();
    assert_eq!(l.overlattice_index, BigInt::from(32));
    assert_eq!(lattice_invariants(&l).unwrap().triple(), (16, 6, 1));
    assert_eq!(fixed_locus_geometric(&ms, &m).unwrap(), FixedLocusData { g: 0, k: 5 });

    // three of them concurrent at [0:0:1]
    let lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [1, -3, 5]].map(|l| pt(l[0], l[1], l[2]));
    let ms = MarkedSextic::new(17, Parts::Lines { lines }, pt(0, 1, 0), pt(1, 0, 0), 0).unwrap();
    let m = build_resolution(&ms).unwrap();
    assert_eq!((m.nodes, m.triples), (12, 1));
    let central = m.branch.iter().find(|b| b.component.is_none()).unwrap();
    assert_eq!(m.dot(&central.class, &central.class), -4);
    for b in &m.branch {
        assert_eq!(m.dot(&b.class, &b.class), -4, "{}", b.label);
    }
    let rep = analyze(&ms).unwrap();
    assert_eq!(rep.invariants.triple(), (17, 5, 1));
    assert_eq!(rep.fixed_locus, FixedLocusData { g: 0, k: 6 });
}

#[test]
fn r3_branch_class_and_lattice() {
    let ms = generate_instance(3, 2).unwrap();
    let m = build_resolution(&ms).unwrap();
    assert_eq!(m.branch.len(), 1);
    assert_eq!(m.branch[0].class, vec![6, -2, -2]);
    assert_eq!(m.dot(&m.branch[0].class, &m.branch[0].class), 28);
    let l = invariant_lattice(&m).unwrap();
    assert_eq!(l.overlattice_index, BigInt::one());
    let want: Vec<Vec<i64>> = vec![vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]];
    assert_eq!(l.gram.to_i64_rows().unwrap(), want);
    assert_eq!(fixed_locus_geometric(&ms, &m).unwrap(), FixedLocusData { g: 8, k: 0 });
}

#[test]
fn series_a_lattices() {
    for r in 1..=10 {
        let mut d = vec![2];
        d.extend(std::iter::repeat(-2).take(r - 1));
        let i = lattice_invariants(&diag_lattice(&d)).unwrap();
        assert_eq!(i.triple(), (r as u32, r as u32, 1));
        assert_eq!(i.signature, (1, r as u32 - 1));
    }
}

#[test]
fn hyperbolic_plane() {
    let u = IntegralLattice::from_gram(IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
    let i = lattice_invariants(&u).unwrap();
    assert_eq!((i.a, i.delta, i.signature), (0, 0, (1, 1)));
    assert!(discriminant_form(&u).unwrap().is_empty());
}

#[test]
fn discriminant_form_of_rank_one() {
    let f = discriminant_form(&diag_lattice(&[2])).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].1, qf(1, 2));
    let f = discriminant_form(&diag_lattice(&[-2])).unwrap();
    assert_eq!(f[0].1, qf(3, 2));
    assert!(matches!(lattice_invariants(&diag_lattice(&[4])), Err(LatticeError::NotTwoElementary(_))));
}

#[test]
fn fixed_locus_formula() {
    assert_eq!(fixed_locus_predict(&inv(16, 6, 1)).unwrap(), FixedLocusData { g: 0, k: 5 });
    assert_eq!(fixed_locus_predict(&inv(3, 3, 1)).unwrap(), FixedLocusData { g: 8, k: 0 });
    assert!(matches!(fixed_locus_predict(&inv(10, 10, 0)), Err(LatticeError::Excluded(..))));
    assert!(matches!(fixed_locus_predict(&inv(10, 8, 0)), Err(LatticeError::Excluded(..))));
    assert!(fixed_locus_predict(&inv(10, 8, 1)).is_ok());
}

#[test]
fn region_and_complement() {
    assert!(nikulin_region_check(&inv(18, 4, 0)));
    assert!(!nikulin_region_check(&NikulinInvariant { r: 21, a: 1, delta: 1, signature: (1, 20) }));
    assert!(!nikulin_region_check(&inv(5, 4, 1)));
    assert!(!nikulin_region_check(&inv(14, 10, 1)));
    assert_eq!(complement_invariants(&inv(17, 5, 1)).unwrap(), (5, 5, (2, 3)));
    assert_eq!(complement_invariants(&inv(3, 3, 1)).unwrap(), (19, 3, (2, 17)));
    assert_eq!(complement_invariants(&inv(18, 4, 0)).unwrap(), (4, 4, (2, 2)));
}

#[test]
fn oracle_corpus_agrees() {
    let c = corpus();
    let mut two_elem = 0;
    for g in &c {
        let l = IntegralLattice::from_gram(IntMatrix::from_i64(g));
        let (is2, a, delta) = brute(g);
        match lattice_invariants(&l) {
            Ok(i) => {
                assert!(is2, "{g:?}");
                assert_eq!((i.a, i.delta), (a, delta), "{g:?}");
                two_elem += 1;
            }
            Err(LatticeError::NotTwoElementary(_)) => assert!(!is2, "{g:?}"),
            Err(e) => panic!("{g:?}: {e}"),
        }
    }
    assert_eq!(c.len(), 50);
    assert!(two_elem >= 20, "only {two_elem} 2-elementary cases");
}

#[test]
fn discriminant_generators_are_dual_vectors() {
    for g in corpus() {
        let l = IntegralLattice::from_gram(IntMatrix::from_i64(&g));
        let n = g.len();
        for (y, qv) in discriminant_form(&l).unwrap() {
            for i in 0..n {
                let s: Rational = (0..n).map(|j| q(g[i][j]) * &y[j]).fold(Rational::zero(), |a, b| a + b);
                assert!(s.is_integer());
            }
            assert!(qv >= q(0) && qv < q(2));
        }
    }
}
