//! Resolution model, invariant lattice and its 2-elementary invariants.

pub mod invariants;
pub mod overlattice;
pub mod resolution;

pub use invariants::{complement_invariants, discriminant_form, fixed_locus_geometric, fixed_locus_predict, lattice_invariants, nikulin_region_check};
pub use overlattice::invariant_lattice;
pub use resolution::build_resolution;

use crate::curves::{CurveError, PointSet, Pt};
use crate::exactmath::{rational, IntMatrix, Rational};
use crate::families::MarkedSextic;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("unsupported singularity: {0}")]
    Unsupported(String),
    #[error("resolution model invariant violated: {0}")]
    Model(String),
    #[error("generator matrix is rank deficient")]
    RankDeficient,
    #[error("form is degenerate")]
    Degenerate,
    #[error("invariant factor {0} is not 1 or 2")]
    NotTwoElementary(BigInt),
    #[error("({0},{1},{2}) is excluded")]
    Excluded(u32, u32, u32),
    #[error("({0},{1},{2}) is outside the admissible region")]
    Region(u32, u32, u32),
    #[error("two fixed components of positive genus")]
    TwoPositiveGenus,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// One exceptional class of the blow-up Ỹ → ℙ².
#[derive(Clone, Debug, PartialEq)]
pub enum Exceptional {
    /// Blow-up of a node; `conj` indexes the point inside a conjugate cluster.
    Node { location: PointSet, conj: usize },
    /// First blow-up of a triple point.
    TripleCenter { point: Pt },
    /// Second-level blow-up in the direction of a tangent line.
    TripleDirection { point: Pt, tangent: Pt },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchClass {
    pub label: String,
    /// Coordinates in (h, e₁, …, e_m).
    pub class: Vec<i64>,
    /// Index into the curve components; `None` for a triple-point central curve.
    pub component: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionModel {
    pub symbols: Vec<String>,
    pub exceptional: Vec<Exceptional>,
    pub branch: Vec<BranchClass>,
    pub q1_index: usize,
    pub q2_index: usize,
    pub nodes: usize,
    pub triples: usize,
}

impl ResolutionModel {
    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    /// diag(1, −1, …, −1)
    pub fn gram(&self) -> IntMatrix {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect();
        IntMatrix::from_i64(&rows)
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// e over q₁, e over q₂, h − e_{q₁} − e_{q₂}.
    pub fn marking_classes(&self) -> [Vec<i64>; 3] {
        let mut l = self.unit(0);
        l[self.q1_index] = -1;
        l[self.q2_index] = -1;
        [self.unit(self.q1_index), self.unit(self.q2_index), l]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.symbols,
            "branch_components": self.branch.iter().map(|b| json!({"label": b.label, "class": b.class})).collect::<Vec<_>>(),
            "marking_classes": self.marking_classes().to_vec(),
        })
    }
}

/// H₊ with its basis written in resolution-model coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralLattice {
    pub gram: IntMatrix,
    pub basis: Vec<Vec<Rational>>,
    /// Index of Pic(Ỹ)(2) inside the lattice; 1 when built from a bare Gram.
    pub overlattice_index: BigInt,
}

impl IntegralLattice {
    pub fn from_gram(gram: IntMatrix) -> IntegralLattice {
        let n = gram.rows();
        let basis = (0..n).map(|i| (0..n).map(|j| rational::q(i64::from(i == j))).collect()).collect();
        IntegralLattice { gram, basis, overlattice_index: BigInt::from(1) }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NikulinInvariant {
    pub r: u32,
    pub a: u32,
    pub delta: u32,
    pub signature: (u32, u32),
}

impl NikulinInvariant {
    pub fn triple(&self) -> (u32, u32, u32) {
        (self.r, self.a, self.delta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedLocusData {
    pub g: u32,
    pub k: u32,
}

/// Full pipeline for one instance.
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub model: ResolutionModel,
    pub lattice: IntegralLattice,
    pub invariants: NikulinInvariant,
    pub fixed_locus: FixedLocusData,
    pub predicted: Result<FixedLocusData, LatticeError>,
}

pub fn analyze(ms: &MarkedSextic) -> Result<LatticeReport, LatticeError> {
    let model = build_resolution(ms)?;
    let lattice = invariant_lattice(&model)?;
    let invariants = lattice_invariants(&lattice)?;
    let fixed_locus = fixed_locus_geometric(ms, &model)?;
    let predicted = fixed_locus_predict(&invariants);
    Ok(LatticeReport { model, lattice, invariants, fixed_locus, predicted })
}

impl LatticeReport {
    pub fn to_json(&self) -> Value {
        let gram: Vec<Vec<String>> = self.lattice.gram.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let gram: Vec<Vec<Value>> = gram.into_iter().map(|r| r.into_iter().map(|s| s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))).collect()).collect();
        json!({
            "r": self.invariants.r,
            "a": self.invariants.a,
            "delta": self.invariants.delta,
            "signature": [self.invariants.signature.0, self.invariants.signature.1],
            "gram": gram,
            "overlattice_index": self.lattice.overlattice_index.to_string(),
            "fixed_locus": {"g": self.fixed_locus.g, "k": self.fixed_locus.k},
        })
    }
}
