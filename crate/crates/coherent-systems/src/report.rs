//! Report assembly: one section per subcommand, a combined full report,
//! and both text and structured renderings.
//!
//! Structured rendering is JSON with fixed field order and canonical
//! rational strings, so emitted reports re-parse and re-emit byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    alpha_bgn_threshold, alpha_injectivity_threshold, alpha_range_bound, alpha_torsion_threshold,
    alpha_torsion_tilde, enumerate_critical_values, slope_gap_q, terminal_window, BoundsError,
    CriticalValue, SystemType,
};
use crate::census::{census, CensusError};
use crate::curve::{NodalCurve, Polarization, ValidationError};
use crate::goodness::{
    is_good, lambda_w, structure_sheaf_stability, GoodnessError, GoodnessVerdict, StabilityVerdict,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

impl From<GoodnessError> for ReportError {
    fn from(e: GoodnessError) -> Self {
        match e {
            GoodnessError::Validation(v) => ReportError::Validation(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSection {
    pub gamma: usize,
    pub delta: usize,
    pub genera: Vec<i64>,
    pub node_degrees: Vec<usize>,
    pub arithmetic_genus: i64,
    pub chi_structure_sheaf: i64,
    pub compact_type: bool,
    pub spanning_trees: String,
    pub weights: Vec<String>,
}

pub fn curve_section(curve: &NodalCurve, pol: &Polarization) -> CurveSection {
    CurveSection {
        gamma: curve.gamma(),
        delta: curve.delta(),
        genera: curve.genera().to_vec(),
        node_degrees: curve.node_degrees(),
        arithmetic_genus: curve.arithmetic_genus(),
        chi_structure_sheaf: curve.chi_structure_sheaf(),
        compact_type: curve.is_compact_type(),
        spanning_trees: curve.spanning_tree_count().to_string(),
        weights: pol.weights().iter().map(|w| w.to_string()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcurveSlopeDocument {
    pub components: Vec<usize>,
    pub w_slope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSheafDocument {
    pub verdict: StabilityVerdict,
    pub subcurve_slopes: Vec<SubcurveSlopeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessSection {
    pub verdict: GoodnessVerdict,
    pub minimum: String,
    pub witness: Vec<String>,
    pub uniform_only: bool,
    pub lambda_w: String,
    pub structure_sheaf: StructureSheafDocument,
}

pub fn goodness_section(
    curve: &NodalCurve,
    pol: &Polarization,
) -> Result<GoodnessSection, ReportError> {
    let report = is_good(curve, pol)?;
    let lambda = lambda_w(curve, pol)?;
    let (verdict, records) = structure_sheaf_stability(curve, pol)?;
    Ok(GoodnessSection {
        verdict: report.verdict,
        minimum: report.minimum.to_string(),
        witness: report.witness.iter().map(|w| w.to_string()).collect(),
        uniform_only: report.uniform_only,
        lambda_w: lambda.to_string(),
        structure_sheaf: StructureSheafDocument {
            verdict,
            subcurve_slopes: records
                .into_iter()
                .map(|r| SubcurveSlopeDocument {
                    components: r.subcurve,
                    w_slope: r.kernel_w_slope.to_string(),
                })
                .collect(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDocument {
    pub r: String,
    pub d: String,
    pub k: u32,
}

impl TypeDocument {
    pub fn from_type(ty: &SystemType) -> Self {
        TypeDocument {
            r: ty.w_rank().to_string(),
            d: ty.w_degree().to_string(),
            k: ty.sections(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub k: u32,
    pub multirank: Vec<u64>,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValueDocument {
    pub alpha: String,
    pub witnesses: Vec<WitnessDocument>,
}

fn critical_value_documents(values: &[CriticalValue]) -> Vec<CriticalValueDocument> {
    values
        .iter()
        .map(|cv| CriticalValueDocument {
            alpha: cv.alpha.to_string(),
            witnesses: cv
                .witnesses
                .iter()
                .map(|w| WitnessDocument {
                    k: w.k_prime,
                    multirank: w.multirank.clone(),
                    chi: w.chi_prime,
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub system_type: TypeDocument,
    pub alpha_range_bound: String,
    #[serde(rename = "alpha_I")]
    pub alpha_i: String,
    #[serde(rename = "alpha_T_tilde")]
    pub alpha_t_tilde: String,
    #[serde(rename = "alpha_T")]
    pub alpha_t: String,
    pub q: Option<String>,
    #[serde(rename = "alpha_S")]
    pub alpha_s: String,
    #[serde(rename = "alpha_L")]
    pub alpha_l: String,
    pub window: [String; 2],
    pub critical_values: Vec<CriticalValueDocument>,
}

/// Threshold chain and terminal window. Requires a good polarization and
/// positive degree; the critical values listed are those in the full range
/// `(0, d/(r-k))`.
pub fn bounds_section(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<BoundsSection, ReportError> {
    let alpha_i = alpha_injectivity_threshold(curve, pol, ty)?;
    let alpha_t = alpha_torsion_threshold(curve, pol, ty)?;
    let q = match slope_gap_q(curve, pol, ty) {
        Ok(q) => Some(q),
        Err(BoundsError::EmptySubsheafRange { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let alpha_s = alpha_bgn_threshold(curve, pol, ty)?;
    let (alpha_l, upper) = terminal_window(curve, pol, ty)?;
    let critical = enumerate_critical_values(curve, pol, ty, &upper)?;
    Ok(BoundsSection {
        system_type: TypeDocument::from_type(ty),
        alpha_range_bound: alpha_range_bound(curve, pol, ty)?.to_string(),
        alpha_i: alpha_i.to_string(),
        alpha_t_tilde: alpha_torsion_tilde(ty).to_string(),
        alpha_t: alpha_t.to_string(),
        q: q.map(|q| q.to_string()),
        alpha_s: alpha_s.to_string(),
        alpha_l: alpha_l.to_string(),
        window: [alpha_l.to_string(), upper.to_string()],
        critical_values: critical_value_documents(&critical),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValuesSection {
    pub system_type: TypeDocument,
    pub window: String,
    pub critical_values: Vec<CriticalValueDocument>,
}

/// Critical values in `(0, window)`. Works for any polarization.
pub fn critical_values_section(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
    window: &Rational,
) -> Result<CriticalValuesSection, ReportError> {
    let critical = enumerate_critical_values(curve, pol, ty, window)?;
    Ok(CriticalValuesSection {
        system_type: TypeDocument::from_type(ty),
        window: window.to_string(),
        critical_values: critical_value_documents(&critical),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDocument {
    pub degrees: Vec<i64>,
    pub restriction_flags: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSection {
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub arithmetic_genus: i64,
    pub nonempty: bool,
    #[serde(rename = "N")]
    pub extension_dim: i64,
    pub beta: i64,
    pub fiber_dim: Option<i64>,
    pub component_dim: Option<i64>,
    pub u_component_dim: i64,
    pub component_count: String,
    pub count_is_for_general_polarization: bool,
    pub labels: Vec<LabelDocument>,
    pub label_count_mismatch: bool,
}

pub fn census_section(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
) -> Result<CensusSection, ReportError> {
    let report = census(curve, r, d, k)?;
    Ok(CensusSection {
        r: report.r,
        d: report.d,
        k: report.k,
        arithmetic_genus: report.arithmetic_genus,
        nonempty: report.nonempty,
        extension_dim: report.extension_dim,
        beta: report.beta,
        fiber_dim: report.fiber_dim,
        component_dim: report.component_dim,
        u_component_dim: report.u_component_dim,
        component_count: report.component_count.to_string(),
        count_is_for_general_polarization: report.count_is_for_general_polarization,
        labels: report
            .labels
            .into_iter()
            .map(|l| LabelDocument {
                degrees: l.degrees,
                restriction_flags: l.restriction_flags,
            })
            .collect(),
        label_count_mismatch: report.label_count_mismatch,
    })
}

/// The `report` command output: validate, goodness, bounds and census in
/// sequence. The census is present only for integral `(r, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub curve: CurveSection,
    pub goodness: GoodnessSection,
    pub bounds: BoundsSection,
    pub census: Option<CensusSection>,
}

pub fn full_report(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<FullReport, ReportError> {
    let curve_sec = curve_section(curve, pol);
    let goodness_sec = goodness_section(curve, pol)?;
    let bounds_sec = bounds_section(curve, pol, ty)?;
    let census_sec = if ty.w_rank().is_integer() && ty.w_degree().is_integer() {
        use num_traits::ToPrimitive;
        let r = ty.w_rank().to_integer().to_i64();
        let d = ty.w_degree().to_integer().to_i64();
        match (r, d) {
            (Some(r), Some(d)) => Some(census_section(curve, r, d, ty.sections() as i64)?),
            _ => None,
        }
    } else {
        None
    };
    Ok(FullReport {
        curve: curve_sec,
        goodness: goodness_sec,
        bounds: bounds_sec,
        census: census_sec,
    })
}

pub fn to_json<T: Serialize>(section: &T) -> String {
    serde_json::to_string_pretty(section).expect("report serialization cannot fail")
}

// ---------------------------------------------------------------------------
// text rendering

fn slope_verdict_text(verdict: StabilityVerdict) -> &'static str {
    match verdict {
        StabilityVerdict::Stable => "stable",
        StabilityVerdict::StrictlySemistable => "strictly semistable",
        StabilityVerdict::Unstable => "unstable",
    }
}

impl CurveSection {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "curve: ok");
        let _ = writeln!(
            out,
            "  components: {} (genera {:?}), nodes: {}",
            self.gamma, self.genera, self.delta
        );
        let _ = writeln!(
            out,
            "  p_a = {}, chi(O_C) = {}, node degrees {:?}",
            self.arithmetic_genus, self.chi_structure_sheaf, self.node_degrees
        );
        let _ = writeln!(
            out,
            "  compact type: {}, spanning trees: {}",
            self.compact_type, self.spanning_trees
        );
        let _ = writeln!(out, "  weights: {}", self.weights.join(", "));
        out
    }
}

impl GoodnessSection {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            GoodnessVerdict::Good => "good",
            GoodnessVerdict::NotGood => "not good",
        };
        let _ = writeln!(
            out,
            "polarization: {} (minimum {}, witness ray [{}])",
            verdict,
            self.minimum,
            self.witness.join(", ")
        );
        let _ = writeln!(out, "  lambda_w = {}", self.lambda_w);
        let _ = writeln!(
            out,
            "  structure sheaf: {}",
            slope_verdict_text(self.structure_sheaf.verdict)
        );
        for record in &self.structure_sheaf.subcurve_slopes {
            let _ = writeln!(
                out,
                "    subcurve {:?}: kernel w-slope {}",
                record.components, record.w_slope
            );
        }
        out
    }
}

impl BoundsSection {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "bounds for type ({}, {}, {}):",
            self.system_type.r, self.system_type.d, self.system_type.k
        );
        let _ = writeln!(out, "  alpha range bound = {}", self.alpha_range_bound);
        let _ = writeln!(
            out,
            "  alpha_I = {}, alpha_T~ = {}, alpha_T = {}",
            self.alpha_i, self.alpha_t_tilde, self.alpha_t
        );
        match &self.q {
            Some(q) => {
                let _ = writeln!(out, "  q = {}, alpha_S = {}", q, self.alpha_s);
            }
            None => {
                let _ = writeln!(
                    out,
                    "  q undefined (no quotient subsheaves), alpha_S = {}",
                    self.alpha_s
                );
            }
        }
        let _ = writeln!(
            out,
            "  terminal window = ({}, {})",
            self.window[0], self.window[1]
        );
        if self.critical_values.is_empty() {
            let _ = writeln!(out, "  critical values: none");
        } else {
            let _ = writeln!(out, "  critical values:");
            for cv in &self.critical_values {
                let _ = writeln!(
                    out,
                    "    alpha = {} ({} witnesses)",
                    cv.alpha,
                    cv.witnesses.len()
                );
            }
        }
        out
    }
}

impl CriticalValuesSection {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "critical values for type ({}, {}, {}) in (0, {}):",
            self.system_type.r, self.system_type.d, self.system_type.k, self.window
        );
        if self.critical_values.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for cv in &self.critical_values {
            let _ = writeln!(out, "  alpha = {}", cv.alpha);
            for w in &cv.witnesses {
                let _ = writeln!(
                    out,
                    "    witness: k' = {}, multirank {:?}, chi' = {}",
                    w.k, w.multirank, w.chi
                );
            }
        }
        out
    }
}

impl CensusSection {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "census of type ({}, {}, {}) with p_a = {}:",
            self.r, self.d, self.k, self.arithmetic_genus
        );
        if !self.nonempty {
            let _ = writeln!(out, "  empty (k > N = {})", self.extension_dim);
            return out;
        }
        let _ = writeln!(
            out,
            "  nonempty; N = {}, beta = {}, fiber dim = {}, component dim = {}, U-component dim = {}",
            self.extension_dim,
            self.beta,
            self.fiber_dim.unwrap_or_default(),
            self.component_dim.unwrap_or_default(),
            self.u_component_dim
        );
        let _ = writeln!(
            out,
            "  components (general polarization): {}{}",
            self.component_count,
            if self.label_count_mismatch {
                " [label enumeration disagrees]"
            } else {
                ""
            }
        );
        for label in &self.labels {
            let _ = writeln!(
                out,
                "    label {:?}, restriction flags {:?}",
                label.degrees, label.restriction_flags
            );
        }
        out
    }
}

impl FullReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.curve.text());
        out.push_str(&self.goodness.text());
        out.push_str(&self.bounds.text());
        match &self.census {
            Some(census) => out.push_str(&census.text()),
            None => out.push_str("census: skipped (type is not integral)\n"),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn setup() -> (NodalCurve, Polarization, SystemType) {
        (
            NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap(),
            Polarization::from_ratios(&[(1, 2), (1, 2)]).unwrap(),
            SystemType::from_ints(2, 2, 1).unwrap(),
        )
    }

    #[test]
    fn full_report_matches_worked_values() {
        let (curve, pol, ty) = setup();
        let report = full_report(&curve, &pol, &ty).unwrap();
        assert_eq!(report.goodness.verdict, GoodnessVerdict::Good);
        assert_eq!(report.goodness.lambda_w, "0");
        assert_eq!(report.bounds.alpha_i, "2/3");
        assert_eq!(report.bounds.alpha_t, "2/3");
        assert_eq!(report.bounds.alpha_s, "2/3");
        assert_eq!(report.bounds.window, ["4/3".to_string(), "2".to_string()]);
        let census = report.census.as_ref().unwrap();
        assert!(census.nonempty);
        assert_eq!(census.beta, 8);
        assert_eq!(census.extension_dim, 5);
        assert_eq!(census.fiber_dim, Some(4));
        assert_eq!(census.component_count, "1");
    }

    #[test]
    fn structured_report_round_trips_byte_identically() {
        let (curve, pol, ty) = setup();
        let report = full_report(&curve, &pol, &ty).unwrap();
        let emitted = to_json(&report);
        let reparsed: FullReport = serde_json::from_str(&emitted).unwrap();
        assert_eq!(to_json(&reparsed), emitted);
        assert_eq!(reparsed, report);
    }

    #[test]
    fn bounds_section_requires_goodness() {
        let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap();
        let skew = Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        let ty = SystemType::from_ints(2, 2, 1).unwrap();
        assert!(matches!(
            bounds_section(&curve, &skew, &ty),
            Err(ReportError::Bounds(BoundsError::NotGood))
        ));
    }

    #[test]
    fn critical_values_section_works_without_goodness() {
        let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap();
        let skew = Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        let ty = SystemType::from_ints(2, 2, 1).unwrap();
        let section = critical_values_section(&curve, &skew, &ty, &rat(2)).unwrap();
        assert_eq!(section.window, "2");
    }

    #[test]
    fn text_report_mentions_key_values() {
        let (curve, pol, ty) = setup();
        let report = full_report(&curve, &pol, &ty).unwrap();
        let text = report.text();
        assert!(text.contains("good"));
        assert!(text.contains("alpha_I = 2/3"));
        assert!(text.contains("terminal window = (4/3, 2)"));
        assert!(text.contains("beta = 8"));
    }
}
