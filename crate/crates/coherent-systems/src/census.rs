//! Census of the terminal moduli space for uniform multirank.
//!
//! For integer `(r, d, k)` with `0 < k < r` and `d > 0` the terminal moduli
//! space of systems with multirank `r` on every component is nonempty iff
//! `k <= N = d + (r-k)(p_a - 1)`; its locally-free components are
//! Grassmannian fibrations of fiber dimension `k(N-k)` over components of
//! the quotient moduli space, each of dimension `1 + (r-k)^2 (p_a - 1)`,
//! and the total dimension is the Brill-Noether number. For a general
//! polarization the component count is `h s^(gamma-1)` with `h` the number
//! of spanning trees of the dual graph.

use num_bigint::BigInt;
use thiserror::Error;

use crate::curve::NodalCurve;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census requires integers 0 < k < r, got r = {r}, k = {k}")]
    SectionCountOutOfRange { r: i64, k: i64 },
    #[error("census requires d > 0, got {d}")]
    NonPositiveDegree { d: i64 },
    #[error("label ({label:?}) sums to {sum}, expected d = {d}")]
    LabelSumMismatch { label: Vec<i64>, sum: i64, d: i64 },
    #[error("label has {got} entries for a curve with {expected} components")]
    LabelLength { expected: usize, got: usize },
    #[error("degree bounds have {got} entries for a curve with {expected} components")]
    BoundsLength { expected: usize, got: usize },
    #[error("label enumeration without bounds requires d >= 0, got {d}")]
    UnboundedEnumeration { d: i64 },
    #[error("census quantity overflows 64-bit integers")]
    Overflow,
}

fn check_type(r: i64, d: i64, k: i64) -> Result<(), CensusError> {
    if k <= 0 || k >= r {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    if d <= 0 {
        return Err(CensusError::NonPositiveDegree { d });
    }
    Ok(())
}

fn narrowed(value: i128) -> Result<i64, CensusError> {
    i64::try_from(value).map_err(|_| CensusError::Overflow)
}

/// Nonempty iff `k <= (d + r(p_a - 1)) / p_a`, equivalently `k <= N`.
pub fn is_nonempty(curve: &NodalCurve, r: i64, d: i64, k: i64) -> Result<bool, CensusError> {
    check_type(r, d, k)?;
    let pa = curve.arithmetic_genus() as i128;
    Ok(k as i128 * pa <= d as i128 + r as i128 * (pa - 1))
}

/// Brill-Noether number `r^2 (p_a - 1) + 1 - k (k - d + r (p_a - 1))`.
pub fn brill_noether_number(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
) -> Result<i64, CensusError> {
    if k < 0 || k >= r {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    let pa1 = (curve.arithmetic_genus() - 1) as i128;
    let (r, d, k) = (r as i128, d as i128, k as i128);
    narrowed(r * r * pa1 + 1 - k * (k - d + r * pa1))
}

/// Extension space dimension `N = d + (r-k)(p_a - 1)` and the Grassmannian
/// fiber dimension `k (N - k)`. Errors when `k > N` (empty Grassmannian).
pub fn bgn_fiber_dimension(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
) -> Result<(i64, i64), CensusError> {
    check_type(r, d, k)?;
    let pa1 = (curve.arithmetic_genus() - 1) as i128;
    let n = d as i128 + (r - k) as i128 * pa1;
    if (k as i128) > n {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    Ok((narrowed(n)?, narrowed(k as i128 * (n - k as i128))?))
}

/// Component count `h s^(gamma - 1)` for a general polarization, where
/// `h` is the number of spanning trees and `s = r - k`.
pub fn component_count(curve: &NodalCurve, r: i64, k: i64) -> Result<BigInt, CensusError> {
    if k <= 0 || k >= r {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    let s = BigInt::from(r - k);
    Ok(curve.spanning_tree_count() * s.pow(curve.gamma() as u32 - 1))
}

/// Dimensions `(1 + (r-k)^2 (p_a - 1), beta)` of a quotient-moduli
/// component and of the corresponding terminal-moduli component. The second
/// always equals the first plus the fiber dimension.
pub fn component_dimensions(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
) -> Result<(i64, i64), CensusError> {
    check_type(r, d, k)?;
    let pa1 = (curve.arithmetic_genus() - 1) as i128;
    let s = (r - k) as i128;
    let u_dim = narrowed(1 + s * s * pa1)?;
    let y_dim = brill_noether_number(curve, r, d, k)?;
    let (_, fiber) = bgn_fiber_dimension(curve, r, d, k)?;
    assert_eq!(y_dim, u_dim + fiber, "dimension identity must hold");
    Ok((u_dim, y_dim))
}

/// Per-component restriction flags for one degree label: component `i`
/// passes iff `d_i > 0` and `k <= d_i + (r-k)(g_i - 1)`; the generic
/// restriction then lands in the terminal moduli space of that component.
pub fn restriction_criterion(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
    label: &[i64],
) -> Result<Vec<bool>, CensusError> {
    if k <= 0 || k >= r {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    if label.len() != curve.gamma() {
        return Err(CensusError::LabelLength {
            expected: curve.gamma(),
            got: label.len(),
        });
    }
    let sum: i64 = label.iter().sum();
    if sum != d {
        return Err(CensusError::LabelSumMismatch {
            label: label.to_vec(),
            sum,
            d,
        });
    }
    Ok(label
        .iter()
        .zip(curve.genera())
        .map(|(&di, &g)| di > 0 && k as i128 <= di as i128 + (r - k) as i128 * (g - 1) as i128)
        .collect())
}

/// One enumerated component label with its restriction flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub degrees: Vec<i64>,
    pub restriction_flags: Vec<bool>,
}

/// All integer degree labels summing to `d` within the given per-component
/// bounds (default `0..=d`), each annotated with restriction flags. The
/// enumeration is a heuristic: the count formula is reported separately and
/// a mismatch between the two is flagged, not resolved.
pub fn enumerate_component_labels(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
    bounds: Option<&[(i64, i64)]>,
) -> Result<Vec<LabelRecord>, CensusError> {
    if k <= 0 || k >= r {
        return Err(CensusError::SectionCountOutOfRange { r, k });
    }
    let gamma = curve.gamma();
    let bounds: Vec<(i64, i64)> = match bounds {
        Some(b) => {
            if b.len() != gamma {
                return Err(CensusError::BoundsLength {
                    expected: gamma,
                    got: b.len(),
                });
            }
            b.to_vec()
        }
        None => {
            if d < 0 {
                return Err(CensusError::UnboundedEnumeration { d });
            }
            vec![(0, d); gamma]
        }
    };

    let mut labels = Vec::new();
    let mut current = vec![0i64; gamma];
    enumerate_labels_rec(curve, r, d, k, &bounds, 0, d, &mut current, &mut labels)?;
    Ok(labels)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_labels_rec(
    curve: &NodalCurve,
    r: i64,
    d: i64,
    k: i64,
    bounds: &[(i64, i64)],
    index: usize,
    remaining: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<LabelRecord>,
) -> Result<(), CensusError> {
    if index == bounds.len() {
        if remaining == 0 {
            let flags = restriction_criterion(curve, r, d, k, current)?;
            out.push(LabelRecord {
                degrees: current.clone(),
                restriction_flags: flags,
            });
        }
        return Ok(());
    }
    let (lo, hi) = bounds[index];
    for value in lo..=hi {
        current[index] = value;
        enumerate_labels_rec(
            curve,
            r,
            d,
            k,
            bounds,
            index + 1,
            remaining - value,
            current,
            out,
        )?;
    }
    current[index] = 0;
    Ok(())
}

/// Full census data for integer type `(r, d, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub arithmetic_genus: i64,
    pub nonempty: bool,
    /// `N = d + (r-k)(p_a - 1)`, the extension space dimension.
    pub extension_dim: i64,
    pub beta: i64,
    /// Grassmannian fiber dimension `k(N-k)`; absent when empty.
    pub fiber_dim: Option<i64>,
    /// Dimension of each locally-free component; absent when empty.
    pub component_dim: Option<i64>,
    pub u_component_dim: i64,
    /// `h s^(gamma-1)`; asserted by the source only for a general
    /// polarization, so it always carries a caveat.
    pub component_count: BigInt,
    pub count_is_for_general_polarization: bool,
    pub labels: Vec<LabelRecord>,
    /// True when the heuristic label enumeration disagrees with the count
    /// formula.
    pub label_count_mismatch: bool,
}

/// Runs the whole census for integer type `(r, d, k)` with default label
/// bounds.
pub fn census(curve: &NodalCurve, r: i64, d: i64, k: i64) -> Result<CensusReport, CensusError> {
    check_type(r, d, k)?;
    let nonempty = is_nonempty(curve, r, d, k)?;
    let pa1 = (curve.arithmetic_genus() - 1) as i128;
    let extension_dim = narrowed(d as i128 + (r - k) as i128 * pa1)?;
    let beta = brill_noether_number(curve, r, d, k)?;
    let count = component_count(curve, r, k)?;
    let (fiber_dim, component_dim, u_component_dim) = if nonempty {
        let (u_dim, y_dim) = component_dimensions(curve, r, d, k)?;
        let (_, fiber) = bgn_fiber_dimension(curve, r, d, k)?;
        (Some(fiber), Some(y_dim), u_dim)
    } else {
        let s = (r - k) as i128;
        (None, None, narrowed(1 + s * s * pa1)?)
    };
    let labels = enumerate_component_labels(curve, r, d, k, None)?;
    let mismatch = BigInt::from(labels.len()) != count;
    Ok(CensusReport {
        r,
        d,
        k,
        arithmetic_genus: curve.arithmetic_genus(),
        nonempty,
        extension_dim,
        beta,
        fiber_dim,
        component_dim,
        u_component_dim,
        component_count: count,
        count_is_for_general_polarization: true,
        labels,
        label_count_mismatch: mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::NodalCurve;

    fn base_curve() -> NodalCurve {
        NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap()
    }

    #[test]
    fn nonempty_examples() {
        let curve = base_curve(); // p_a = 4
        assert!(is_nonempty(&curve, 3, 2, 1).unwrap());
        assert!(is_nonempty(&curve, 2, 1, 1).unwrap()); // boundary 1 <= 1
        assert!(!is_nonempty(&curve, 10, 1, 9).unwrap());
    }

    #[test]
    fn nonempty_iff_k_at_most_extension_dim() {
        let curve = NodalCurve::new(vec![2, 4], vec![(0, 1), (0, 1)]).unwrap();
        let pa1 = curve.arithmetic_genus() - 1;
        for r in 2..=8i64 {
            for k in 1..r {
                for d in 1..=8i64 {
                    let n = d + (r - k) * pa1;
                    assert_eq!(is_nonempty(&curve, r, d, k).unwrap(), k <= n);
                }
            }
        }
    }

    #[test]
    fn brill_noether_examples() {
        let curve = base_curve();
        assert_eq!(brill_noether_number(&curve, 3, 2, 1).unwrap(), 20);
        assert_eq!(brill_noether_number(&curve, 2, 2, 1).unwrap(), 8);
        // k = 0 reproduces the quotient component dimension
        assert_eq!(brill_noether_number(&curve, 2, 5, 0).unwrap(), 1 + 4 * 3);
    }

    #[test]
    fn fiber_dimension_examples() {
        let curve = base_curve();
        assert_eq!(bgn_fiber_dimension(&curve, 3, 2, 1).unwrap(), (8, 7));
        assert_eq!(bgn_fiber_dimension(&curve, 2, 2, 1).unwrap(), (5, 4));
        // k = N gives a point
        let single = NodalCurve::new(vec![2], vec![]).unwrap(); // p_a = 2
        assert_eq!(bgn_fiber_dimension(&single, 3, 1, 2).unwrap(), (2, 0));
    }

    #[test]
    fn component_count_examples() {
        let curve = base_curve();
        assert_eq!(component_count(&curve, 3, 1).unwrap(), BigInt::from(2));
        let three_nodes = NodalCurve::new(vec![2, 3], vec![(0, 1); 3]).unwrap();
        assert_eq!(
            component_count(&three_nodes, 3, 1).unwrap(),
            BigInt::from(6)
        );
        let tree = NodalCurve::new(vec![2, 2, 2], vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(component_count(&tree, 2, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn component_dimension_examples() {
        let curve = base_curve();
        assert_eq!(component_dimensions(&curve, 3, 2, 1).unwrap(), (13, 20));
        assert_eq!(component_dimensions(&curve, 2, 2, 1).unwrap(), (4, 8));
    }

    #[test]
    fn dimension_identity_holds_on_a_grid() {
        let curve = NodalCurve::new(vec![2, 3, 4], vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        for r in 2..=6i64 {
            for k in 1..r {
                for d in 1..=10i64 {
                    if !is_nonempty(&curve, r, d, k).unwrap() {
                        continue;
                    }
                    let (u_dim, y_dim) = component_dimensions(&curve, r, d, k).unwrap();
                    let (_, fiber) = bgn_fiber_dimension(&curve, r, d, k).unwrap();
                    assert_eq!(y_dim, u_dim + fiber);
                    assert_eq!(y_dim, brill_noether_number(&curve, r, d, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let curve = base_curve();
        assert_eq!(
            restriction_criterion(&curve, 3, 2, 1, &[1, 1]).unwrap(),
            vec![true, true]
        );
        assert_eq!(
            restriction_criterion(&curve, 3, 2, 1, &[2, 0]).unwrap(),
            vec![true, false]
        );
        assert_eq!(
            restriction_criterion(&curve, 3, 4, 2, &[0, 4]).unwrap(),
            vec![false, true]
        );
        assert!(matches!(
            restriction_criterion(&curve, 3, 2, 1, &[2, 1]),
            Err(CensusError::LabelSumMismatch { .. })
        ));
    }

    #[test]
    fn restriction_is_monotone_in_degree() {
        let curve = NodalCurve::new(vec![2, 5], vec![(0, 1)]).unwrap();
        for d1 in 0..6i64 {
            let d = 6;
            let flags = restriction_criterion(&curve, 4, d, 2, &[d1, d - d1]).unwrap();
            let next = restriction_criterion(&curve, 4, d + 1, 2, &[d1 + 1, d - d1]).unwrap();
            if flags[0] {
                assert!(next[0]);
            }
        }
    }

    #[test]
    fn label_enumeration_examples() {
        let curve = base_curve();
        let labels = enumerate_component_labels(&curve, 4, 2, 2, None).unwrap();
        let degrees: Vec<Vec<i64>> = labels.iter().map(|l| l.degrees.clone()).collect();
        assert_eq!(degrees, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);

        let labels = enumerate_component_labels(&curve, 2, 0, 1, None).unwrap();
        let degrees: Vec<Vec<i64>> = labels.iter().map(|l| l.degrees.clone()).collect();
        assert_eq!(degrees, vec![vec![0, 0]]);

        assert!(matches!(
            enumerate_component_labels(&curve, 2, -1, 1, None),
            Err(CensusError::UnboundedEnumeration { d: -1 })
        ));
    }

    #[test]
    fn label_enumeration_with_explicit_bounds() {
        let curve = base_curve();
        let labels = enumerate_component_labels(&curve, 4, 2, 2, Some(&[(1, 3), (-1, 1)])).unwrap();
        let degrees: Vec<Vec<i64>> = labels.iter().map(|l| l.degrees.clone()).collect();
        assert_eq!(degrees, vec![vec![1, 1], vec![2, 0], vec![3, -1]]);

        assert!(matches!(
            enumerate_component_labels(&curve, 4, 2, 2, Some(&[(0, 2)])),
            Err(CensusError::BoundsLength {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn census_report_flags_label_mismatch() {
        // s = 2 on the one-node curve: count formula says 2, enumeration
        // finds 3 candidates.
        let curve = base_curve();
        let report = census(&curve, 4, 2, 2).unwrap();
        assert_eq!(report.component_count, BigInt::from(2));
        assert_eq!(report.labels.len(), 3);
        assert!(report.label_count_mismatch);
    }

    #[test]
    fn census_worked_example() {
        let curve = base_curve();
        let report = census(&curve, 3, 2, 1).unwrap();
        assert!(report.nonempty);
        assert_eq!(report.extension_dim, 8);
        assert_eq!(report.beta, 20);
        assert_eq!(report.fiber_dim, Some(7));
        assert_eq!(report.component_dim, Some(20));
        assert_eq!(report.u_component_dim, 13);
        assert_eq!(report.component_count, BigInt::from(2));
    }

    #[test]
    fn census_rejects_bad_types() {
        let curve = base_curve();
        assert!(matches!(
            census(&curve, 2, 2, 2),
            Err(CensusError::SectionCountOutOfRange { .. })
        ));
        assert!(matches!(
            census(&curve, 2, 0, 1),
            Err(CensusError::NonPositiveDegree { .. })
        ));
    }
}
