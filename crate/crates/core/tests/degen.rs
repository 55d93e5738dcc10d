use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sextic_core::curves::geom;
use sextic_core::degen::coble::{fiber_by_implicitization, CubicMap};
use sextic_core::degen::*;
use sextic_core::exactmath::rational::{q, qf};
use sextic_core::exactmath::{Poly, Rational, UniPoly};
use sextic_core::families::{expected_invariants, verify_membership};
use num_traits::Zero;
use std::sync::OnceLock;

fn paths() -> &'static Vec<(u32, DegenerationPath)> {
    static P: OnceLock<Vec<(u32, DegenerationPath)>> = OnceLock::new();
    P.get_or_init(|| (3..=17u32).into_par_iter().map(|r| (r, build_degeneration(r, 1).unwrap_or_else(|e| panic!("r = {r}: {e}")))).collect())
}

fn path(r: u32) -> &'static DegenerationPath {
    &paths().iter().find(|(s, _)| *s == r).unwrap().1
}

fn same_up_to_sign(a: &Poly, b: &Poly) -> bool {
    a.primitive() == b.primitive() || a.primitive() == -b.primitive()
}

#[test]
fn every_path_passes() {
    let reports: Vec<_> = paths().par_iter().map(|(r, p)| (*r, path_report(p))).collect();
    for (r, rep) in reports {
        assert!(rep.pass(r), "r = {r}: {}", rep.to_json(r));
        let l = rep.lattice.as_ref().unwrap();
        assert_eq!(l.generic_invariants, expected_invariants(r));
        assert_eq!(l.boundary_invariants, expected_invariants(r + 1));
        assert_eq!(l.rank_jump(), 1, "r = {r}");
        assert_eq!(l.new_block, if r >= 16 { 4 } else { 1 }, "r = {r}");
        assert!(l.branch_relations && l.marking_preserved && l.h_plus_integral);
        assert_eq!(rep.marking, Ok(true));
    }
}

#[test]
fn samples_are_members_and_boundary_is_the_next_family() {
    for (r, p) in paths() {
        assert_eq!(p.samples.len(), 5, "r = {r}");
        for s in &p.samples {
            assert!(!s.t.is_zero());
            assert_eq!(s.fiber.r, *r);
            assert!(verify_membership(&s.fiber).pass());
        }
        assert_eq!(p.boundary.r, r + 1);
        assert!(p.boundary_fiber_matches(), "r = {r}");
    }
}

#[test]
fn twelve_keeps_the_unresolved_point() {
    let p = path(12);
    let u = p.unresolved.as_ref().expect("unresolved point");
    // the node of the splitting cubic stays on every fiber
    for s in &p.samples {
        assert!(s.fiber.curve.equation().eval(u).is_zero());
    }
    assert!(p.to_json(serde_json::Value::Null)["unresolved_point"].is_array());
    assert!(path(15).unresolved.is_none());
}

#[test]
fn labels_outside_the_range() {
    for r in [0, 2, 18, 19] {
        assert_eq!(build_degeneration(r, 1).unwrap_err(), DegenError::BadLabel(r));
    }
}

#[test]
fn empty_sample_list_is_vacuous() {
    let rep = verify_equisingular(path(16), &[]);
    assert!(rep.samples.is_empty());
    assert!(rep.samples_pass());
    assert!(rep.warning.is_some());
    assert!(rep.pass());
}

#[test]
fn zero_sample_is_rejected() {
    let rep = verify_equisingular(path(16), &[q(0), qf(1, 3)]);
    assert!(!rep.samples[0].membership);
    assert!(rep.samples[1].membership && rep.samples[1].genericity);
    assert!(!rep.pass());
}

#[test]
fn pole_in_the_marking() {
    let mut p = path(17).clone();
    let q1 = p.boundary.q1.clone();
    p.q1 = PointFamily { num: q1.map(UniPoly::constant), den: UniPoly::x() };
    assert_eq!(boundary_marking_agrees(&p), Err(DegenError::Pole));
    assert_eq!(p.q1.limit_at_zero(), Err(DegenError::Pole));
}

#[test]
fn wrong_limit_marking_is_caught() {
    let mut p = path(15).clone();
    let other = geom::pt(1, 2, 3);
    p.q2 = PointFamily::constant(&other);
    assert_eq!(boundary_marking_agrees(&p), Ok(false));
}

#[test]
fn coble_family_matches_implicitization() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phi = loop {
        if let Ok(phi) = CubicMap::random(&mut rng, 4) {
            break phi;
        }
    };
    let f = phi.family().unwrap();
    for t in [q(1), qf(1, 2), qf(-3, 7)] {
        let direct = fiber_by_implicitization(&phi, &t).expect("implicit sextic");
        assert!(same_up_to_sign(&at_t(&f, &t), &direct), "t = {t}");
    }
    // the fixed node and the moving node lie on every fiber
    let node = phi.fixed_node();
    let moving = phi.moving_node();
    for t in [q(1), qf(2, 5)] {
        let g = at_t(&f, &t);
        assert!(g.eval(&node).is_zero());
        assert!(g.eval(&moving.at(&t).unwrap()).is_zero());
    }
    // at t = 0 the fiber is the union of the two line images
    let c = &phi.line_image(0).unwrap() * &phi.line_image(1).unwrap();
    assert!(same_up_to_sign(&at_t(&f, &q(0)), &c));
}

#[test]
fn node_to_node_adds_one_exceptional_class() {
    let l = lattice_specialization(path(3)).unwrap();
    assert_eq!(l.rank_boundary, l.rank_generic + 1);
    assert_eq!(l.new_classes.len(), 1);
    let nz: Vec<usize> = (0..l.new_classes[0].len()).filter(|&i| l.new_classes[0][i] != 0).collect();
    assert_eq!(nz.len(), 1);
    assert_eq!(l.new_classes[0][nz[0]].abs(), 1);
    assert!(l.boundary_symbols[nz[0]].starts_with('e'));
    // h goes to h
    assert_eq!(l.images[0][0], q(1));
    assert!(l.images[0][1..].iter().all(|x| x == &Rational::from_integer(0.into())));
}

#[test]
fn triple_point_forms_a_block_of_four() {
    for r in [16, 17] {
        let l = lattice_specialization(path(r)).unwrap();
        assert_eq!(l.new_block, 4);
        assert_eq!(l.rank_boundary, l.rank_generic + 1);
        assert_eq!(l.new_classes.len(), 1, "only the central class is new");
    }
}

#[test]
fn paths_are_reproducible() {
    let a = build_degeneration(16, 7).unwrap();
    let b = build_degeneration(16, 7).unwrap();
    assert_eq!(a.family, b.family);
    assert_eq!(a.q1, b.q1);
    let c = build_degeneration(16, 8).unwrap();
    assert_ne!(a.family, c.family);
}

#[test]
fn json_has_the_path_fields() {
    let p = path(14);
    let j = p.to_json(path_report(p).to_json(14));
    for k in ["r", "recipe", "curve_family", "markings", "samples", "boundary_instance", "component_map", "smoothed_node", "unresolved_point", "checks"] {
        assert!(j.get(k).is_some(), "missing {k}");
    }
    assert_eq!(j["samples"].as_array().unwrap().len(), 5);
    assert_eq!(j["curve_family"]["vars"][3], "t");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn fibers_are_the_family_at_t(n in -40i64..40, d in 1i64..30) {
        prop_assume!(n != 0);
        let t = qf(n, d);
        for r in [17, 13, 9] {
            let p = path(r);
            let f = p.fiber(&t).unwrap();
            prop_assert!(same_up_to_sign(f.curve.equation(), &at_t(&p.family.equation(), &t)));
            // marked points are defined and lie on the fiber
            prop_assert!(f.curve.equation().eval(&f.q1).is_zero());
            prop_assert!(f.curve.equation().eval(&f.q2).is_zero());
        }
    }
}
