//! The shared structured-text format.
//!
//! Curve documents, sheaf-numerics documents and every report section are
//! JSON objects with a fixed field order. Rationals travel as canonical
//! strings `"p/q"` (lowest terms, positive denominator, plain `"p"` for
//! integers), so emitted structured output re-parses and re-emits
//! byte-identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{validate, NodalCurve, Polarization, ValidationError};
use crate::rational::{parse_rational, Rational};
use crate::sheaf::{DepthOneNumerics, SheafError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("document is not valid JSON: {0}")]
    Json(String),
    #[error("field `{field}` holds `{value}`, which is not a rational `p/q`")]
    Rational { field: String, value: String },
    #[error(transparent)]
    Curve(#[from] ValidationError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// Curve plus polarization: `components`, `nodes` (0-based index pairs) and
/// `weights` (exact rational strings).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub components: Vec<ComponentDocument>,
    pub nodes: Vec<[usize; 2]>,
    pub weights: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDocument {
    pub genus: i64,
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Validates and builds the curve and polarization.
    pub fn build(&self) -> Result<(NodalCurve, Polarization), DocumentError> {
        let genera = self.components.iter().map(|c| c.genus).collect();
        let nodes = self.nodes.iter().map(|&[a, b]| (a, b)).collect();
        let curve = NodalCurve::new(genera, nodes)?;
        let weights = self
            .weights
            .iter()
            .map(|w| {
                parse_rational(w).map_err(|_| DocumentError::Rational {
                    field: "weights".into(),
                    value: w.clone(),
                })
            })
            .collect::<Result<Vec<Rational>, _>>()?;
        let pol = Polarization::new(weights)?;
        validate(&curve, &pol)?;
        Ok((curve, pol))
    }

    pub fn from_parts(curve: &NodalCurve, pol: &Polarization) -> Self {
        CurveDocument {
            components: curve
                .genera()
                .iter()
                .map(|&genus| ComponentDocument { genus })
                .collect(),
            nodes: curve.nodes().iter().map(|&(a, b)| [a, b]).collect(),
            weights: pol.weights().iter().map(|w| w.to_string()).collect(),
        }
    }
}

/// Numerical shadow of a depth-one sheaf: `multirank`, `node_free_ranks`
/// and `chi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafDocument {
    pub multirank: Vec<u64>,
    pub node_free_ranks: Vec<u64>,
    pub chi: i64,
}

impl SheafDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn build(&self, curve: &NodalCurve) -> Result<DepthOneNumerics, DocumentError> {
        Ok(DepthOneNumerics::new(
            curve,
            self.multirank.clone(),
            self.node_free_ranks.clone(),
            self.chi,
        )?)
    }

    pub fn from_numerics(sheaf: &DepthOneNumerics) -> Self {
        SheafDocument {
            multirank: sheaf.multirank().to_vec(),
            node_free_ranks: sheaf.node_free_ranks().to_vec(),
            chi: sheaf.euler_char(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "components": [ { "genus": 2 }, { "genus": 2 } ],
  "nodes": [ [0, 1] ],
  "weights": ["1/2", "1/2"]
}"#;

    #[test]
    fn parses_and_builds_the_sample() {
        let doc = CurveDocument::from_json(SAMPLE).unwrap();
        let (curve, pol) = doc.build().unwrap();
        assert_eq!(curve.gamma(), 2);
        assert_eq!(curve.delta(), 1);
        assert_eq!(pol.weights().len(), 2);
    }

    #[test]
    fn round_trips_byte_identically() {
        let doc = CurveDocument::from_json(SAMPLE).unwrap();
        let emitted = doc.to_json();
        let reparsed = CurveDocument::from_json(&emitted).unwrap();
        assert_eq!(reparsed.to_json(), emitted);
    }

    #[test]
    fn normalizes_weights_to_canonical_form() {
        let text =
            r#"{"components":[{"genus":2},{"genus":2}],"nodes":[[0,1]],"weights":["2/4","3/6"]}"#;
        let doc = CurveDocument::from_json(text).unwrap();
        let (curve, pol) = doc.build().unwrap();
        let canonical = CurveDocument::from_parts(&curve, &pol);
        assert_eq!(canonical.weights, vec!["1/2", "1/2"]);
    }

    #[test]
    fn missing_fields_are_json_errors() {
        let text = r#"{"components":[{"genus":2}],"nodes":[]}"#;
        assert!(matches!(
            CurveDocument::from_json(text),
            Err(DocumentError::Json(_))
        ));
    }

    #[test]
    fn malformed_rationals_are_reported() {
        let text =
            r#"{"components":[{"genus":2},{"genus":2}],"nodes":[[0,1]],"weights":["1/2","half"]}"#;
        let doc = CurveDocument::from_json(text).unwrap();
        assert!(matches!(doc.build(), Err(DocumentError::Rational { .. })));
    }

    #[test]
    fn invalid_curves_are_validation_errors() {
        let text =
            r#"{"components":[{"genus":2},{"genus":2}],"nodes":[[1,1]],"weights":["1/2","1/2"]}"#;
        let doc = CurveDocument::from_json(text).unwrap();
        assert!(matches!(doc.build(), Err(DocumentError::Curve(_))));
    }

    #[test]
    fn sheaf_document_round_trip() {
        let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap();
        let doc = SheafDocument {
            multirank: vec![2, 1],
            node_free_ranks: vec![1],
            chi: -3,
        };
        let sheaf = doc.build(&curve).unwrap();
        assert_eq!(SheafDocument::from_numerics(&sheaf), doc);
        let emitted = doc.to_json();
        assert_eq!(
            SheafDocument::from_json(&emitted).unwrap().to_json(),
            emitted
        );
    }
}
