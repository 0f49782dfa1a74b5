//! Goodness of a polarization, the penalty constant, and the
//! structure-sheaf stability test.
//!
//! A polarization is good when the defect is nonnegative on every depth-one
//! shadow and vanishes only on the locally free ones. The defect is linear
//! in the shadow and minimized at maximal node free ranks, so goodness
//! reduces to an exact linear program over the normalized multirank cone:
//!
//! ```text
//! minimize  sum c_i r_i - sum_p t_p
//! subject to  sum r_i = 1,  0 <= t_p <= r_i, t_p <= r_j,  r >= 0
//! ```
//!
//! with `c_i = 1 - g_i - w_i chi(O_C)`. The verdict is good exactly when the
//! optimum is 0 and is attained only at the uniform point.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{validate, NodalCurve, Polarization, ValidationError};
use crate::rational::{rat, Rational};
use crate::sheaf::DepthOneNumerics;
use crate::simplex::{minimize, Constraint, LinearProgram, LpOutcome, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodnessError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoodnessVerdict {
    Good,
    NotGood,
}

/// Outcome of the goodness decision. `witness` is a multirank ray with
/// entries summing to 1 attaining `minimum`; for a good polarization it is
/// the uniform ray and the minimum is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub verdict: GoodnessVerdict,
    pub minimum: Rational,
    pub witness: Vec<Rational>,
    pub uniform_only: bool,
}

impl GoodnessReport {
    pub fn is_good(&self) -> bool {
        self.verdict == GoodnessVerdict::Good
    }
}

/// Coefficients `c_i = 1 - g_i - w_i chi(O_C)` of the defect in the
/// multirank. They always sum to the number of nodes.
pub fn objective_coefficients(
    curve: &NodalCurve,
    pol: &Polarization,
) -> Result<Vec<Rational>, GoodnessError> {
    validate(curve, pol)?;
    let chi0 = rat(curve.chi_structure_sheaf());
    Ok(curve
        .genera()
        .iter()
        .zip(pol.weights())
        .map(|(&g, w)| rat(1 - g) - w * &chi0)
        .collect())
}

fn goodness_constraints(curve: &NodalCurve) -> Vec<Constraint> {
    let gamma = curve.gamma();
    let delta = curve.delta();
    let vars = gamma + delta;
    let mut constraints = Vec::with_capacity(1 + 2 * delta);
    let mut sum_row = vec![Rational::zero(); vars];
    for cell in sum_row.iter_mut().take(gamma) {
        *cell = rat(1);
    }
    constraints.push(Constraint::new(sum_row, Relation::Equal, rat(1)));
    for (p, &(a, b)) in curve.nodes().iter().enumerate() {
        for endpoint in [a, b] {
            let mut row = vec![Rational::zero(); vars];
            row[gamma + p] = rat(1);
            row[endpoint] = rat(-1);
            constraints.push(Constraint::new(row, Relation::LessEq, Rational::zero()));
        }
    }
    constraints
}

fn goodness_objective(curve: &NodalCurve, coefficients: &[Rational]) -> Vec<Rational> {
    let mut objective = coefficients.to_vec();
    objective.extend(std::iter::repeat_n(rat(-1), curve.delta()));
    objective
}

fn solve_expect_optimal(lp: &LinearProgram) -> (Rational, Vec<Rational>) {
    match minimize(lp) {
        LpOutcome::Optimal { value, point } => (value, point),
        outcome => unreachable!("goodness program is feasible and bounded, got {outcome:?}"),
    }
}

/// Decides goodness by the exact linear program described in the module
/// docs. When the optimum 0 is attained away from the uniform point, the
/// returned witness is a non-uniform optimal ray.
pub fn is_good(curve: &NodalCurve, pol: &Polarization) -> Result<GoodnessReport, GoodnessError> {
    let coefficients = objective_coefficients(curve, pol)?;
    let gamma = curve.gamma();
    let constraints = goodness_constraints(curve);
    let objective = goodness_objective(curve, &coefficients);
    let lp = LinearProgram {
        objective: objective.clone(),
        constraints: constraints.clone(),
    };
    let (minimum, point) = solve_expect_optimal(&lp);

    // The uniform point is feasible and scores zero, so the minimum is
    // never positive.
    debug_assert!(!minimum.is_positive());

    if minimum.is_negative() {
        return Ok(GoodnessReport {
            verdict: GoodnessVerdict::NotGood,
            minimum,
            witness: point[..gamma].to_vec(),
            uniform_only: false,
        });
    }

    // Optimum is 0. Decide whether the optimal face is the uniform point
    // alone by maximizing each multirank coordinate over that face: the
    // face is {uniform} exactly when every maximum equals 1/gamma.
    let uniform_value = rat(1) / rat(gamma as i64);
    let mut face_constraints = constraints;
    face_constraints.push(Constraint::new(
        objective,
        Relation::Equal,
        Rational::zero(),
    ));
    for i in 0..gamma {
        let mut max_coordinate = vec![Rational::zero(); gamma + curve.delta()];
        max_coordinate[i] = rat(-1);
        let lp = LinearProgram {
            objective: max_coordinate,
            constraints: face_constraints.clone(),
        };
        let (negated_max, point) = solve_expect_optimal(&lp);
        let max = -negated_max;
        debug_assert!(max >= uniform_value);
        if max > uniform_value {
            return Ok(GoodnessReport {
                verdict: GoodnessVerdict::NotGood,
                minimum: Rational::zero(),
                witness: point[..gamma].to_vec(),
                uniform_only: false,
            });
        }
    }

    Ok(GoodnessReport {
        verdict: GoodnessVerdict::Good,
        minimum: Rational::zero(),
        witness: vec![uniform_value; gamma],
        uniform_only: true,
    })
}

/// Penalty constant: 0 for a good polarization, `(1/w_m - 1)(p_a - 1)`
/// otherwise.
pub fn lambda_w(curve: &NodalCurve, pol: &Polarization) -> Result<Rational, GoodnessError> {
    let report = is_good(curve, pol)?;
    if report.is_good() {
        return Ok(Rational::zero());
    }
    let w_min = pol.min_weight();
    Ok((rat(1) / w_min - rat(1)) * rat(curve.arithmetic_genus() - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityVerdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// w-slope of the kernel of `O_C -> O_{A^c}` for one proper subcurve `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcurveSlopeRecord {
    pub subcurve: Vec<usize>,
    pub kernel_w_slope: Rational,
}

/// Slope test of the structure sheaf against every subcurve kernel.
///
/// For each nonempty proper subset `A` of components, the kernel of the
/// restriction `O_C -> O_{A^c}` has multirank the indicator of `A`, free
/// rank 1 at nodes internal to `A` and 0 elsewhere, and Euler characteristic
/// `sum_{i in A} (1 - g_i) - (internal nodes) - (crossing nodes)`. The
/// structure sheaf is stable against these kernels iff every slope is
/// negative. A single-component curve has no proper subcurves and is
/// reported stable.
pub fn structure_sheaf_stability(
    curve: &NodalCurve,
    pol: &Polarization,
) -> Result<(StabilityVerdict, Vec<SubcurveSlopeRecord>), GoodnessError> {
    validate(curve, pol)?;
    let gamma = curve.gamma();
    if gamma == 1 {
        return Ok((StabilityVerdict::Stable, Vec::new()));
    }
    assert!(
        gamma <= 24,
        "subcurve test enumerates 2^gamma kernels; {gamma} components is too many"
    );
    let mut records = Vec::with_capacity((1usize << gamma) - 2);
    let mut max_slope: Option<Rational> = None;
    for mask in 1..((1usize << gamma) - 1) {
        let selected: Vec<bool> = (0..gamma).map(|i| mask & (1 << i) != 0).collect();
        let internal = curve.nodes_within(&selected);
        let crossing = curve.nodes_crossing(&selected);
        let chi: i64 = selected
            .iter()
            .zip(curve.genera())
            .filter(|(&s, _)| s)
            .map(|(_, &g)| 1 - g)
            .sum::<i64>()
            - internal as i64
            - crossing as i64;
        let multirank: Vec<u64> = selected.iter().map(|&s| s as u64).collect();
        let free_ranks: Vec<u64> = curve
            .nodes()
            .iter()
            .map(|&(a, b)| (selected[a] && selected[b]) as u64)
            .collect();
        let kernel = DepthOneNumerics::new(curve, multirank, free_ranks, chi)
            .expect("kernel shadow is valid by construction");
        let slope = kernel
            .w_slope(curve, pol)
            .expect("kernel has positive w-rank");
        if max_slope.as_ref().is_none_or(|m| slope > *m) {
            max_slope = Some(slope.clone());
        }
        records.push(SubcurveSlopeRecord {
            subcurve: (0..gamma).filter(|i| mask & (1 << i) != 0).collect(),
            kernel_w_slope: slope,
        });
    }
    let max_slope = max_slope.expect("at least one proper subcurve");
    let verdict = if max_slope.is_negative() {
        StabilityVerdict::Stable
    } else if max_slope.is_zero() {
        StabilityVerdict::StrictlySemistable
    } else {
        StabilityVerdict::Unstable
    };
    // Good polarizations make the structure sheaf stable; check the
    // contrapositive whenever the test fails.
    if verdict != StabilityVerdict::Stable {
        assert!(
            !is_good(curve, pol)?.is_good(),
            "good polarization produced a non-stable structure sheaf"
        );
    }
    Ok((verdict, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn base_curve() -> NodalCurve {
        NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap()
    }

    fn halves() -> Polarization {
        Polarization::from_ratios(&[(1, 2), (1, 2)]).unwrap()
    }

    fn skew() -> Polarization {
        Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn objective_coefficient_examples() {
        let curve = base_curve();
        assert_eq!(
            objective_coefficients(&curve, &halves()).unwrap(),
            vec![ratio(1, 2), ratio(1, 2)]
        );
        assert_eq!(
            objective_coefficients(&curve, &skew()).unwrap(),
            vec![ratio(-1, 4), ratio(5, 4)]
        );
        let three_nodes = NodalCurve::new(vec![2, 3], vec![(0, 1); 3]).unwrap();
        assert_eq!(
            objective_coefficients(&three_nodes, &halves()).unwrap(),
            vec![rat(2), rat(1)]
        );
    }

    #[test]
    fn coefficients_sum_to_node_count() {
        for (genera, nodes, weights) in [
            (vec![2, 2], vec![(0, 1)], vec![(1, 2), (1, 2)]),
            (vec![2, 3], vec![(0, 1); 3], vec![(1, 5), (4, 5)]),
            (
                vec![2, 2, 4],
                vec![(0, 1), (1, 2), (0, 2), (0, 1)],
                vec![(1, 3), (1, 3), (1, 3)],
            ),
        ] {
            let curve = NodalCurve::new(genera, nodes).unwrap();
            let pol = Polarization::from_ratios(&weights).unwrap();
            let sum: Rational = objective_coefficients(&curve, &pol).unwrap().iter().sum();
            assert_eq!(sum, rat(curve.delta() as i64));
        }
    }

    #[test]
    fn balanced_weights_are_good() {
        let report = is_good(&base_curve(), &halves()).unwrap();
        assert!(report.is_good());
        assert_eq!(report.minimum, rat(0));
        assert!(report.uniform_only);
        assert_eq!(report.witness, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn skew_weights_are_not_good() {
        let report = is_good(&base_curve(), &skew()).unwrap();
        assert_eq!(report.verdict, GoodnessVerdict::NotGood);
        assert_eq!(report.minimum, ratio(-1, 4));
        assert_eq!(report.witness, vec![rat(1), rat(0)]);
        assert!(!report.uniform_only);
    }

    #[test]
    fn three_node_curve_is_good_for_balanced_weights() {
        let curve = NodalCurve::new(vec![2, 3], vec![(0, 1); 3]).unwrap();
        assert!(is_good(&curve, &halves()).unwrap().is_good());
    }

    #[test]
    fn boundary_case_zero_attained_off_uniform() {
        // c = (0, 2) on the 2-node curve of genera (3,3): the ray (1,0)
        // also scores 0, so the polarization is not good.
        let curve = NodalCurve::new(vec![3, 3], vec![(0, 1), (0, 1)]).unwrap();
        let pol = Polarization::from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let coefficients = objective_coefficients(&curve, &pol).unwrap();
        assert_eq!(coefficients, vec![rat(0), rat(2)]);
        let report = is_good(&curve, &pol).unwrap();
        assert_eq!(report.verdict, GoodnessVerdict::NotGood);
        assert_eq!(report.minimum, rat(0));
        assert!(!report.uniform_only);
        assert_eq!(report.witness, vec![rat(1), rat(0)]);
    }

    #[test]
    fn single_component_is_good() {
        let curve = NodalCurve::new(vec![3], vec![]).unwrap();
        let pol = Polarization::from_ratios(&[(1, 1)]).unwrap();
        let report = is_good(&curve, &pol).unwrap();
        assert!(report.is_good());
        assert_eq!(report.witness, vec![rat(1)]);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_w(&base_curve(), &halves()).unwrap(), rat(0));
        assert_eq!(lambda_w(&base_curve(), &skew()).unwrap(), rat(9));
        // w_m = 1/3, p_a = 4, not good
        let curve = base_curve();
        let pol = Polarization::from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let report = is_good(&curve, &pol).unwrap();
        assert_eq!(report.verdict, GoodnessVerdict::NotGood);
        assert_eq!(lambda_w(&curve, &pol).unwrap(), rat(6));
    }

    #[test]
    fn structure_sheaf_examples() {
        let (verdict, records) = structure_sheaf_stability(&base_curve(), &halves()).unwrap();
        assert_eq!(verdict, StabilityVerdict::Stable);
        let slopes: Vec<Rational> = records.iter().map(|r| r.kernel_w_slope.clone()).collect();
        assert_eq!(slopes, vec![rat(-1), rat(-1)]);

        let (verdict, records) = structure_sheaf_stability(&base_curve(), &skew()).unwrap();
        assert_eq!(verdict, StabilityVerdict::Unstable);
        let second = records
            .iter()
            .find(|r| r.subcurve == vec![1])
            .expect("record for the second component");
        assert_eq!(second.kernel_w_slope, ratio(1, 3));

        let single = NodalCurve::new(vec![4], vec![]).unwrap();
        let trivial = Polarization::from_ratios(&[(1, 1)]).unwrap();
        let (verdict, records) = structure_sheaf_stability(&single, &trivial).unwrap();
        assert_eq!(verdict, StabilityVerdict::Stable);
        assert!(records.is_empty());
    }

    #[test]
    fn good_implies_stable_on_a_grid() {
        let curves = [
            NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap(),
            NodalCurve::new(vec![2, 3], vec![(0, 1); 3]).unwrap(),
            NodalCurve::new(vec![2, 2, 2], vec![(0, 1), (1, 2)]).unwrap(),
        ];
        let weight_sets: Vec<Vec<(i64, i64)>> = vec![
            vec![(1, 2), (1, 2)],
            vec![(1, 4), (3, 4)],
            vec![(2, 5), (3, 5)],
            vec![(1, 3), (1, 3), (1, 3)],
            vec![(1, 6), (1, 2), (1, 3)],
        ];
        for curve in &curves {
            for weights in &weight_sets {
                if weights.len() != curve.gamma() {
                    continue;
                }
                let pol = Polarization::from_ratios(weights).unwrap();
                let good = is_good(curve, &pol).unwrap().is_good();
                let (verdict, _) = structure_sheaf_stability(curve, &pol).unwrap();
                if good {
                    assert_eq!(verdict, StabilityVerdict::Stable);
                }
                if curve.is_compact_type() {
                    assert_eq!(good, verdict == StabilityVerdict::Stable);
                }
            }
        }
    }

    #[test]
    fn length_mismatch_is_reported() {
        let curve = base_curve();
        let pol = Polarization::from_ratios(&[(1, 1)]).unwrap();
        assert!(matches!(
            is_good(&curve, &pol),
            Err(GoodnessError::Validation(
                ValidationError::LengthMismatch { .. }
            ))
        ));
    }
}
