use proptest::prelude::*;
use sextic_core::curves::geom::{self, pt, Pt};
use sextic_core::curves::SingKind;
use sextic_core::exactmath::rational::{q, qf};
use sextic_core::families::construct::standard_conic;
use sextic_core::families::*;

fn lines_from(v: [[i64; 3]; 6]) -> [Pt; 6] {
    v.map(|l| pt(l[0], l[1], l[2]))
}

#[test]
fn every_family_generates_and_verifies() {
    for r in 3..=18 {
        let ms = generate_instance(r, 1).unwrap_or_else(|e| panic!("r = {r}: {e}"));
        let spec = FamilySpec::get(r).unwrap();
        let loc = ms.locus().unwrap();
        assert_eq!(loc.count(SingKind::Node), spec.nodes, "r = {r}");
        assert_eq!(loc.count(SingKind::OrdinaryTriple), spec.triples, "r = {r}");
        assert_eq!(loc.count(SingKind::Other), 0);
        assert_eq!(spec.rank_rule(), r);
        assert!(verify_membership(&ms).pass());
        let g = check_genericity(&ms);
        assert!(g.pass, "r = {r}: {}", g.detail);
        assert_eq!(g.restriction.unwrap().pattern(), vec![2, 2, 1, 1]);
    }
}

#[test]
fn generation_is_deterministic() {
    for r in [16, 11, 5] {
        assert_eq!(generate_instance(r, 7).unwrap(), generate_instance(r, 7).unwrap());
    }
    let a = generate_instance(18, 1).unwrap();
    let b = generate_instance(18, 2).unwrap();
    assert_ne!(p1p1_normal_form(&a).unwrap(), p1p1_normal_form(&b).unwrap());
}

#[test]
fn r15_marking_rule() {
    let ms = generate_instance(15, 3).unwrap();
    let rep = verify_membership(&ms);
    assert!(rep.pass(), "{:?}", rep.failures());
    if let Parts::ConicLines { lines, .. } = &ms.parts {
        assert!(geom::same_point(&ms.q1, &geom::meet(&lines[0], &lines[2])));
        assert!(geom::same_point(&ms.q2, &geom::meet(&lines[1], &lines[3])));
    } else {
        panic!("wrong parts");
    }
}

#[test]
fn three_concurrent_lines_are_not_r16() {
    // L1, L2, L3 all through [0:0:1]
    let lines = lines_from([[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 3], [2, -1, 5], [3, 1, -7]]);
    let ms = MarkedSextic::new(16, Parts::Lines { lines: lines.clone() }, geom::meet(&lines[0], &lines[3]), geom::meet(&lines[1], &lines[4]), 0).unwrap();
    let rep = verify_membership(&ms);
    assert!(!rep.pass());
    assert!(rep.clauses.iter().any(|c| c.name == "census" && !c.pass));
}

#[test]
fn r12_point_off_intersection_fails_marking() {
    let ms = generate_instance(12, 2).unwrap();
    let Parts::TwoCubics { c1, c2, p } = ms.parts.clone() else { panic!() };
    // another node of the curve that is not on C₁ ∩ C₂: the node of C₁
    let loc = ms.locus().unwrap();
    let other = loc
        .points
        .iter()
        .filter_map(|s| s.location.as_rational().cloned())
        .find(|s| !geom::same_point(s, &p) && !c2.eval(s).is_zero_value())
        .expect("node of C1");
    let bad = MarkedSextic::new(12, Parts::TwoCubics { c1, c2, p: other.clone() }, other, ms.q2.clone(), 2).unwrap();
    let rep = verify_membership(&bad);
    assert!(rep.clauses.iter().any(|c| c.name == "marking" && !c.pass));
    assert!(rep.clauses.iter().any(|c| c.name == "census" && c.pass));
}

trait ZeroValue {
    fn is_zero_value(&self) -> bool;
}
impl ZeroValue for sextic_core::Rational {
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

#[test]
fn line_through_third_node_is_not_generic() {
    // q1 = [0:0:1], q2 = [1:0:0]; L: y = 0 also contains L3 ∩ L6 = [1:0:1]
    let lines = lines_from([[1, 2, 0], [0, 1, 2], [1, 1, -1], [1, -3, 0], [0, 1, -1], [2, 5, -2]]);
    let ms = MarkedSextic::new(16, Parts::Lines { lines }, pt(0, 0, 1), pt(1, 0, 0), 0).unwrap();
    assert!(verify_membership(&ms).pass(), "{:?}", verify_membership(&ms).failures());
    let g = check_genericity(&ms);
    assert!(!g.pass);
    assert_eq!(g.restriction.unwrap().pattern(), vec![2, 2, 2]);
}

#[test]
fn line_tangent_to_conic_is_not_generic() {
    // conic y² = xz is tangent to z = 0 at [1:0:0]; q1, q2 on z = 0
    let (q1, q2) = (pt(1, 1, 0), pt(1, -1, 0));
    let l1 = geom::line_through(&q1, &pt(0, 0, 1));
    let l3 = geom::line_through(&q1, &pt(1, 2, 3));
    let l2 = geom::line_through(&q2, &pt(0, 1, 1));
    let l4 = geom::line_through(&q2, &pt(2, 1, 5));
    let ms = MarkedSextic::new(15, Parts::ConicLines { conic: standard_conic(), lines: [l1, l2, l3, l4] }, q1, q2, 0).unwrap();
    assert!(verify_membership(&ms).pass(), "{:?}", verify_membership(&ms).failures());
    let g = check_genericity(&ms);
    assert!(!g.pass);
    assert_eq!(g.restriction.unwrap().pattern(), vec![2, 2, 2]);
}

#[test]
fn normal_form_roundtrip_and_symmetry() {
    let m = geom::mat_from_i64(&[[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
    let ms = instance_from_lambdas(&q(2), &q(3), &m, 0).unwrap();
    assert!(verify_membership(&ms).pass());
    assert_eq!(p1p1_normal_form(&ms).unwrap(), (q(2), q(3)));
    let sym = instance_from_lambdas(&qf(-5, 2), &qf(-5, 2), &m, 0).unwrap();
    let (a, b) = p1p1_normal_form(&sym).unwrap();
    assert_eq!(a, b);
    assert!(instance_from_lambdas(&q(1), &q(3), &m, 0).is_err());
}

#[test]
fn instance_json_roundtrip() {
    for r in [18, 15, 13, 12, 4] {
        let ms = generate_instance(r, 5).unwrap().with_strong(Some(Branch::Inf));
        let v = ms.to_json();
        assert_eq!(v["strong_marking"], "inf");
        let back = MarkedSextic::from_json(&v).unwrap();
        assert_eq!(back, ms);
    }
    assert!(MarkedSextic::from_json(&serde_json::json!({"r": 16})).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn normal_form_is_projectively_invariant(
        a in -30i64..30, b in 1i64..9, c in -30i64..30, d in 1i64..9,
        m in proptest::array::uniform9(-4i64..=4),
    ) {
        let (l1, l2) = (qf(a, b), qf(c, d));
        let bad = |x: &sextic_core::Rational| num_traits::Zero::is_zero(x) || num_traits::One::is_one(x);
        prop_assume!(!bad(&l1) && !bad(&l2));
        let mm = geom::mat_from_i64(&[[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]]);
        prop_assume!(!num_traits::Zero::is_zero(&geom::mat_det(&mm)));
        let ms = instance_from_lambdas(&l1, &l2, &mm, 0).unwrap();
        prop_assert_eq!(p1p1_normal_form(&ms).unwrap(), (l1, l2));
    }
}
