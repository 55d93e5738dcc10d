//! Plane projective curves: singular points, line restrictions, genus.

pub mod genus;
pub mod geom;
pub mod points;
pub mod restrict;
pub mod singular;

pub use genus::{certify_irreducible, geometric_genus};
pub use geom::Pt;
pub use points::{AlgPoints, PointSet};
pub use restrict::{restrict_to_line, LineRestriction, RestrictedPoint, Role};
pub use singular::{classify_singularity, singular_locus, singular_locus_certified, PointClass, SingKind, SingularLocus, SingularPoint, Tangents};

use crate::exactmath::poly::{Poly, PolyError, XYZ};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is not reduced")]
    NonReduced,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the line is a component of the curve")]
    LineIsComponent,
    #[error("unclassified singularity present")]
    Unclassified,
    #[error("singular-locus certification failed after {0} coordinate changes")]
    RetryExhausted(usize),
    #[error("not a homogeneous ternary form")]
    NotHomogeneous,
    #[error("malformed curve: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub factor: Poly,
    pub multiplicity: u32,
}

/// A curve given by its factored equation.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    equation: Poly,
    components: Vec<Component>,
}

impl PlaneCurve {
    pub fn from_components(factors: Vec<Poly>) -> Result<Self, CurveError> {
        Self::with_components(factors.into_iter().map(|factor| Component { factor, multiplicity: 1 }).collect())
    }

    pub fn with_components(components: Vec<Component>) -> Result<Self, CurveError> {
        if components.is_empty() {
            return Err(CurveError::Malformed("no components".into()));
        }
        let mut eq = Poly::constant(&XYZ, crate::exactmath::rational::q(1));
        for c in &components {
            if c.factor.vars() != eq.vars() {
                return Err(CurveError::Malformed("components must be in x, y, z".into()));
            }
            if c.factor.is_zero() || !c.factor.is_homogeneous() || c.factor.total_degree() == Some(0) || c.multiplicity == 0 {
                return Err(CurveError::NotHomogeneous);
            }
            eq = &eq * &c.factor.pow(c.multiplicity);
        }
        Ok(PlaneCurve { equation: eq, components })
    }

    /// A curve whose factorization is not known; treated as one component.
    pub fn from_equation(f: Poly) -> Result<Self, CurveError> {
        Self::from_components(vec![f])
    }

    pub fn equation(&self) -> &Poly {
        &self.equation
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn degree(&self) -> u32 {
        self.equation.total_degree().unwrap_or(0)
    }
    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|c| c.multiplicity == 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree(),
            "components": self.components.iter().map(|c| serde_json::json!({
                "factor": c.factor.to_json(),
                "multiplicity": c.multiplicity,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CurveError> {
        let comps = v.get("components").and_then(|c| c.as_array()).ok_or_else(|| CurveError::Malformed("missing components".into()))?;
        let mut out = vec![];
        for c in comps {
            let factor = Poly::from_json(&XYZ, c.get("factor").ok_or_else(|| CurveError::Malformed("missing factor".into()))?)?;
            let multiplicity = c.get("multiplicity").and_then(|m| m.as_u64()).ok_or_else(|| CurveError::Malformed("missing multiplicity".into()))? as u32;
            out.push(Component { factor, multiplicity });
        }
        let curve = Self::with_components(out)?;
        if let Some(d) = v.get("degree").and_then(|d| d.as_u64()) {
            if d as u32 != curve.degree() {
                return Err(CurveError::Malformed("declared degree does not match".into()));
            }
        }
        Ok(curve)
    }
}
