//! Independent re-verification of certificates and their lattice classes.

use super::conic::{Conic, ConicPoint, LinearRatio};
use super::{CycleCertificate, CycleError, Which};
use crate::exactmath::{linalg, rational, QuadExt, Rational};
use crate::lattice::{invariant_lattice, Exceptional, ResolutionModel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorCheck {
    pub pass: bool,
    /// Σ div(f_j) as a formal sum of labeled points; empty when valid.
    pub sum: BTreeMap<String, i64>,
    pub detail: String,
}

/// Branch label of a point of Z₀ or Z₁: "+" / "−" for the two points over
/// the direction of L, otherwise a curve-local name.
fn label(curve: &str, t0: &QuadExt, root: &QuadExt, p: Option<&ConicPoint>) -> String {
    match p {
        None => format!("{curve}@t=inf"),
        Some(p) if &p.t == t0 && &p.w == root => "+".into(),
        Some(p) if &p.t == t0 && p.w == -root.clone() => "-".into(),
        Some(p) => format!("{curve}@({}, {})", p.t, p.w),
    }
}

fn divisor(curve: &str, conic: &Conic, t0: &QuadExt, root: &QuadExt, f: &LinearRatio, sum: &mut BTreeMap<String, i64>) -> Result<(String, String), String> {
    let zero = f.num.root().ok_or(format!("{curve}: numerator vanishes identically"))?;
    let pole = f.den.root().ok_or(format!("{curve}: denominator vanishes identically"))?;
    if zero == pole {
        return Err(format!("{curve}: function is constant"));
    }
    let lz = label(curve, t0, root, conic.point_at(&zero).as_ref());
    let lp = label(curve, t0, root, conic.point_at(&pole).as_ref());
    *sum.entry(lz.clone()).or_default() += 1;
    *sum.entry(lp.clone()).or_default() -= 1;
    Ok((lz, lp))
}

pub fn verify_divisor_sum(cert: &CycleCertificate) -> DivisorCheck {
    let mut sum = BTreeMap::new();
    let res = check_inner(cert, &mut sum);
    sum.retain(|_, v| *v != 0);
    match res {
        Ok(()) if sum.is_empty() => DivisorCheck { pass: true, sum, detail: "ok".into() },
        Ok(()) => {
            let detail = format!("nonzero divisor sum {sum:?}");
            DivisorCheck { pass: false, sum, detail }
        }
        Err(detail) => DivisorCheck { pass: false, sum, detail },
    }
}

fn check_inner(cert: &CycleCertificate, sum: &mut BTreeMap<String, i64>) -> Result<(), String> {
    let (c0, c1) = (&cert.z0.conic, &cert.z1.conic);
    let tq = QuadExt::from(match cert.which {
        Which::Node1 => cert.z0.t_q1.clone(),
        Which::Node2 => cert.z0.t_q2.clone(),
    });
    let zero = QuadExt::zero();
    // both curves see the same pair of points over the direction of L
    let r0 = c0.g.eval_in(&tq).to_rational().unwrap_or_default();
    let r1 = c1.g.coeff(0);
    if r0 != r1 || r0.is_zero() {
        return Err(format!("g(t_Q) = {r0} but τ(0) = {r1}"));
    }
    let root = QuadExt::sqrt_of(&r0);
    for (name, c) in [("Z0", c0), ("Z1", c1)] {
        if !c.contains(&c.base) {
            return Err(format!("{name}: base point off the conic"));
        }
    }
    let mut labels = vec![];
    for (name, x) in [("p0", &cert.p0), ("p_inf", &cert.p_inf)] {
        if !c0.contains(&x.on_z0) || !c1.contains(&x.on_z1) {
            return Err(format!("{name} is not on both curves"));
        }
        for (c, p) in [(c0, &x.on_z0), (c1, &x.on_z1)] {
            if c.point_at(&c.param_of(p)).as_ref() != Some(p) {
                return Err(format!("{name}: parametrization does not round-trip"));
            }
        }
        let a = label("Z0", &tq, &root, Some(&x.on_z0));
        let b = label("Z1", &zero, &root, Some(&x.on_z1));
        if a != b || (a != "+" && a != "-") {
            return Err(format!("{name} is labeled {a} on Z0 and {b} on Z1"));
        }
        labels.push(a);
    }
    if labels[0] == labels[1] {
        return Err("p0 and p_inf coincide".into());
    }
    let (z, p) = divisor("Z0", c0, &tq, &root, &cert.f0, sum)?;
    if (z.as_str(), p.as_str()) != (labels[0].as_str(), labels[1].as_str()) {
        return Err(format!("div(f0) = ({z}) − ({p})"));
    }
    let (z, p) = divisor("Z1", c1, &zero, &root, &cert.f1, sum)?;
    if (z.as_str(), p.as_str()) != (labels[1].as_str(), labels[0].as_str()) {
        return Err(format!("div(f1) = ({z}) − ({p})"));
    }
    Ok(())
}

/// ξ† = (Z₀, f₀⁻¹) + (Z₁, f₁⁻¹), for the conjugate strong marking.
pub fn conjugate_cycle(cert: &CycleCertificate) -> CycleCertificate {
    let mut c = cert.clone();
    std::mem::swap(&mut c.p0, &mut c.p_inf);
    c.f0 = cert.f0.inverse();
    c.f1 = cert.f1.inverse();
    c.marking = cert.marking.other();
    c
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    /// Classes in resolution-model coordinates (pulled back, form doubled).
    pub model_z0: Vec<i64>,
    pub model_z1: Vec<i64>,
    /// Coordinates in the H₊ basis; `None` if not integral.
    pub z0: Option<Vec<BigInt>>,
    pub z1: Option<Vec<BigInt>>,
    pub squares: (i64, i64),
    pub product: i64,
    pub sum_square: i64,
    pub primitive: bool,
    pub h_pairing: (i64, i64),
}

impl ClassReport {
    pub fn in_h_plus(&self) -> bool {
        self.z0.is_some() && self.z1.is_some()
    }
    pub fn pass(&self) -> bool {
        self.in_h_plus() && self.squares == (-2, -2) && self.product == 2 && self.sum_square == 0 && self.primitive
    }
    pub fn to_json(&self) -> Value {
        let v = |x: &Option<Vec<BigInt>>| x.as_ref().map(|c| c.iter().map(|b| b.to_string()).collect::<Vec<_>>());
        json!({
            "z0_model": self.model_z0,
            "z1_model": self.model_z1,
            "z0": v(&self.z0),
            "z1": v(&self.z1),
            "squares": [self.squares.0, self.squares.1],
            "product": self.product,
            "sum_square": self.sum_square,
            "primitive": self.primitive,
            "h_pairing": [self.h_pairing.0, self.h_pairing.1],
        })
    }
}

pub fn cycle_classes(cert: &CycleCertificate, model: &ResolutionModel) -> Result<ClassReport, CycleError> {
    let idx = match cert.which {
        Which::Node1 => model.q1_index,
        Which::Node2 => model.q2_index,
    };
    match &model.exceptional[idx - 1] {
        Exceptional::Node { location, .. } if location.is_point(&cert.node) => {}
        _ => return Err(CycleError::Mismatch("node of the certificate is not the marked exceptional class".into())),
    }
    let n = model.rank();
    let mut z1 = vec![0i64; n];
    z1[idx] = 1;
    let z0 = model.marking_classes()[2].clone();
    let mut h = vec![0i64; n];
    h[0] = 1;
    // pullback doubles the form
    let pair = |a: &[i64], b: &[i64]| 2 * model.dot(a, b);
    let sum: Vec<i64> = z0.iter().zip(&z1).map(|(a, b)| a + b).collect();

    let lat = invariant_lattice(model)?;
    let bt: Vec<Vec<Rational>> = (0..n).map(|j| (0..n).map(|i| lat.basis[i][j].clone()).collect()).collect();
    let coords = |x: &[i64]| -> Option<Vec<BigInt>> {
        let rhs: Vec<Rational> = x.iter().map(|&a| rational::q(a)).collect();
        let c = linalg::solve(&bt, &rhs)?;
        c.iter().map(|q| if q.is_integer() { Some(q.to_integer()) } else { None }).collect()
    };
    let (c0, c1, cs) = (coords(&z0), coords(&z1), coords(&sum));
    // the H₊ Gram must reproduce the doubled pairing
    if let (Some(a), Some(b)) = (&c0, &c1) {
        let g = &lat.gram;
        let mut acc = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &a[i] * &g[(i, j)] * &b[j];
            }
        }
        if acc.to_i64() != Some(pair(&z0, &z1)) {
            return Err(CycleError::Mismatch("H₊ Gram disagrees with the pulled-back form".into()));
        }
    }
    let primitive = cs.map(|c| c.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs().is_one()).unwrap_or(false);
    Ok(ClassReport {
        squares: (pair(&z0, &z0), pair(&z1, &z1)),
        product: pair(&z0, &z1),
        sum_square: pair(&sum, &sum),
        primitive,
        h_pairing: (pair(&z0, &h), pair(&z1, &h)),
        model_z0: z0,
        model_z1: z1,
        z0: c0,
        z1: c1,
    })
}
