//! Independent brute-force validators.
//!
//! Each oracle re-derives a result by naive enumeration, sharing only the
//! domain types with the implementation it checks. They are exhaustive
//! within declared bounds, not proof tools.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::bounds::{BoundsError, SystemType};
use crate::curve::{validate, NodalCurve, Polarization, ValidationError};
use crate::goodness::GoodnessVerdict;
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("r_max must be at least 2, got {r_max}")]
    RangeTooSmall { r_max: u64 },
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Minimizer found by exhaustive defect enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteforceGoodness {
    pub minimum: Rational,
    pub witness_multirank: Vec<u64>,
    pub verdict: GoodnessVerdict,
}

/// Enumerates every multirank with entries in `0..=r_max` (not all zero),
/// takes maximal free ranks at the nodes, and minimizes the defect. The
/// verdict is good exactly when the minimum is nonnegative and zero occurs
/// only on uniform multiranks.
///
/// Denominators are cleared up front so the inner loop is pure integer
/// arithmetic.
pub fn goodness_bruteforce(
    curve: &NodalCurve,
    pol: &Polarization,
    r_max: u64,
) -> Result<BruteforceGoodness, OracleError> {
    validate(curve, pol)?;
    if r_max < 2 {
        return Err(OracleError::RangeTooSmall { r_max });
    }
    let gamma = curve.gamma();
    let chi0 = rat(curve.chi_structure_sheaf());
    let coefficients: Vec<Rational> = curve
        .genera()
        .iter()
        .zip(pol.weights())
        .map(|(&g, w)| rat(1 - g) - w * &chi0)
        .collect();
    let common: BigInt = coefficients
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = coefficients
        .iter()
        .map(|c| c.numer() * (&common / c.denom()))
        .collect();

    let mut minimum: Option<BigInt> = None;
    let mut witness = vec![0u64; gamma];
    let mut zero_off_uniform = false;
    let mut negative_seen = false;

    let mut tuple = vec![0u64; gamma];
    loop {
        let mut i = 0;
        while i < gamma {
            if tuple[i] < r_max {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == gamma {
            break;
        }
        let mut value = BigInt::zero();
        for (c, &r) in scaled.iter().zip(&tuple) {
            value += c * BigInt::from(r);
        }
        let mut free_sum = BigInt::zero();
        for &(a, b) in curve.nodes() {
            free_sum += BigInt::from(tuple[a].min(tuple[b]));
        }
        value -= free_sum * &common;

        let uniform = tuple.iter().all(|&r| r == tuple[0]);
        if value.is_zero() && !uniform {
            zero_off_uniform = true;
        }
        if value.is_negative() {
            negative_seen = true;
        }
        if minimum.as_ref().is_none_or(|m| value < *m) {
            minimum = Some(value);
            witness = tuple.clone();
        }
    }

    let minimum = minimum.expect("at least one multirank enumerated");
    let verdict = if negative_seen || zero_off_uniform {
        GoodnessVerdict::NotGood
    } else {
        GoodnessVerdict::Good
    };
    Ok(BruteforceGoodness {
        minimum: Rational::new(minimum, common),
        witness_multirank: witness,
        verdict,
    })
}

/// Critical values in `(0, M)` by direct nested loops over `k'`, the
/// multirank tuple and `chi'`, with a deliberately loose integer window
/// filtered by exact evaluation of the defining formula.
pub fn critical_values_bruteforce(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
    window: &Rational,
) -> Result<Vec<Rational>, BoundsError> {
    validate(curve, pol)?;
    if !window.is_positive() {
        return Err(BoundsError::EmptyWindow { m: window.clone() });
    }
    let gamma = curve.gamma();
    let chi0 = rat(curve.chi_structure_sheaf());
    let r = ty.w_rank();
    let d = ty.w_degree();
    let bound = (r / pol.min_weight())
        .floor()
        .to_integer()
        .to_u64()
        .expect("per-component bound fits in u64");

    let k_rat = rat(ty.sections() as i64);
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for k_prime in 0..=ty.sections() {
        let mut tuple = vec![0u64; gamma];
        loop {
            let mut i = 0;
            while i < gamma {
                if tuple[i] < bound {
                    tuple[i] += 1;
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
            if i == gamma {
                break;
            }
            let r_prime: Rational = tuple
                .iter()
                .zip(pol.weights())
                .map(|(&t, w)| w * rat(t as i64))
                .sum();
            if r_prime > *r {
                continue;
            }
            let denom = &r_prime * &k_rat - r * rat(k_prime as i64);
            if denom.is_zero() {
                continue;
            }
            // chi' landing anywhere near the window; three extra integers of
            // slack on each side, then filter exactly.
            let center = &r_prime * &chi0 + &r_prime * d / r;
            let halfwidth = window * &denom / r;
            let (raw_lo, raw_hi) = if halfwidth.is_positive() {
                (center.clone(), &center + &halfwidth)
            } else {
                (&center + &halfwidth, center.clone())
            };
            let lo = raw_lo.floor().to_integer().to_i64().expect("window fits") - 3;
            let hi = raw_hi.ceil().to_integer().to_i64().expect("window fits") + 3;
            for chi_prime in lo..=hi {
                let d_prime = rat(chi_prime) - &r_prime * &chi0;
                let alpha = (r * d_prime - &r_prime * d) / &denom;
                if alpha.is_positive() && alpha < *window {
                    values.insert(alpha);
                }
            }
        }
    }
    Ok(values.into_iter().collect())
}

/// Spanning trees by exhaustive edge-subset enumeration. Intended for small
/// node counts; the subset count is `2^delta`.
pub fn spanning_trees_bruteforce(curve: &NodalCurve) -> BigInt {
    let gamma = curve.gamma();
    let delta = curve.delta();
    if gamma == 1 {
        return BigInt::one();
    }
    let mut count = BigInt::zero();
    for mask in 0u64..(1u64 << delta) {
        if mask.count_ones() as usize != gamma - 1 {
            continue;
        }
        // union-find over the selected edges
        let mut parent: Vec<usize> = (0..gamma).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut acyclic = true;
        for (e, &(a, b)) in curve.nodes().iter().enumerate() {
            if mask & (1 << e) == 0 {
                continue;
            }
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                acyclic = false;
                break;
            }
            parent[ra] = rb;
        }
        if acyclic {
            count += 1;
        }
    }
    count
}

/// Deterministic pseudo-random stream (splitmix64).
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Checks the Brill-Noether dimension identity for one tuple:
/// `beta = 1 + (r-k)^2 (p_a - 1) + k (N - k)` with `N = d + (r-k)(p_a-1)`.
pub fn beta_identity_holds(p_a: i64, r: i64, d: i64, k: i64, beta: i128) -> bool {
    let pa1 = (p_a - 1) as i128;
    let (r, d, k) = (r as i128, d as i128, k as i128);
    let n = d + (r - k) * pa1;
    beta == 1 + (r - k) * (r - k) * pa1 + k * (n - k)
        && beta == r * r * pa1 + 1 - k * (k - d + r * pa1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityOutcome {
    Pass,
    Counterexample { check: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub trials: u32,
    pub outcome: IdentityOutcome,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.outcome == IdentityOutcome::Pass
    }
}

/// Randomized checks of the algebraic identities: the Brill-Noether
/// dimension identity, `chi = 1 - p_a`, defect linearity and independence
/// of the Euler characteristic, and the defect lower bounds. Stops at the
/// first counterexample.
pub fn identity_suite(seed: u64, trials: u32) -> Result<IdentityReport, OracleError> {
    if trials == 0 {
        return Err(OracleError::ZeroTrials);
    }
    let mut rng = Rng::new(seed);
    for trial in 0..trials {
        if let Some(outcome) = run_one_identity_trial(&mut rng) {
            return Ok(IdentityReport {
                trials: trial + 1,
                outcome,
            });
        }
    }
    Ok(IdentityReport {
        trials,
        outcome: IdentityOutcome::Pass,
    })
}

fn random_connected_curve(rng: &mut Rng) -> NodalCurve {
    let gamma = rng.range(1, 4) as usize;
    let genera: Vec<i64> = (0..gamma).map(|_| rng.range(2, 8)).collect();
    let mut nodes = Vec::new();
    // spanning path first, then random extra nodes
    for i in 1..gamma {
        nodes.push((i - 1, i));
    }
    if gamma >= 2 {
        let extra = rng.range(0, 4);
        for _ in 0..extra {
            let a = rng.range(0, gamma as i64 - 1) as usize;
            let mut b = rng.range(0, gamma as i64 - 1) as usize;
            if a == b {
                b = (b + 1) % gamma;
            }
            nodes.push((a.min(b), a.max(b)));
        }
    }
    NodalCurve::new(genera, nodes).expect("constructed connected curve is valid")
}

fn random_polarization(rng: &mut Rng, gamma: usize) -> Polarization {
    let parts: Vec<i64> = (0..gamma).map(|_| rng.range(1, 12)).collect();
    let total: i64 = parts.iter().sum();
    Polarization::new(
        parts
            .into_iter()
            .map(|p| Rational::new(p.into(), total.into()))
            .collect(),
    )
    .expect("positive parts over their sum form a polarization")
}

fn run_one_identity_trial(rng: &mut Rng) -> Option<IdentityOutcome> {
    // Brill-Noether dimension identity on random integers.
    let p_a = rng.range(2, 50);
    let r = rng.range(2, 20);
    let k = rng.range(1, r - 1);
    let d = rng.range(1, 100);
    let pa1 = (p_a - 1) as i128;
    let beta = (r as i128) * (r as i128) * pa1 + 1
        - (k as i128) * ((k as i128) - (d as i128) + (r as i128) * pa1);
    if !beta_identity_holds(p_a, r, d, k, beta) {
        return Some(IdentityOutcome::Counterexample {
            check: "beta-identity".into(),
            detail: format!("p_a={p_a} r={r} d={d} k={k}"),
        });
    }

    // Curve identities.
    let curve = random_connected_curve(rng);
    if curve.chi_structure_sheaf() != 1 - curve.arithmetic_genus() {
        return Some(IdentityOutcome::Counterexample {
            check: "chi-genus".into(),
            detail: format!("{curve:?}"),
        });
    }
    let degree_sum: usize = curve.node_degrees().iter().sum();
    if degree_sum != 2 * curve.delta() {
        return Some(IdentityOutcome::Counterexample {
            check: "node-degrees".into(),
            detail: format!("{curve:?}"),
        });
    }

    // Defect linearity, chi-independence and lower bounds on a random shadow.
    let pol = random_polarization(rng, curve.gamma());
    let multirank: Vec<u64> = (0..curve.gamma()).map(|_| rng.range(0, 6) as u64).collect();
    if multirank.iter().all(|&m| m == 0) {
        return None; // skip the zero shadow
    }
    let free_ranks: Vec<u64> = curve
        .nodes()
        .iter()
        .map(|&(a, b)| {
            let max = multirank[a].min(multirank[b]);
            rng.range(0, max as i64) as u64
        })
        .collect();
    let chi = rng.range(-20, 20);
    let sheaf = crate::sheaf::DepthOneNumerics::new(&curve, multirank, free_ranks, chi)
        .expect("random shadow is valid");
    let delta_w = sheaf.delta_w(&curve, &pol).expect("lengths match");
    let doubled = sheaf
        .scaled(2)
        .delta_w(&curve, &pol)
        .expect("lengths match");
    if doubled != &delta_w * rat(2) {
        return Some(IdentityOutcome::Counterexample {
            check: "defect-linearity".into(),
            detail: format!("{sheaf:?}"),
        });
    }
    let shifted = crate::sheaf::DepthOneNumerics::new(
        &curve,
        sheaf.multirank().to_vec(),
        sheaf.node_free_ranks().to_vec(),
        chi + rng.range(-5, 5),
    )
    .expect("shifted shadow is valid");
    if shifted.delta_w(&curve, &pol).expect("lengths match") != delta_w {
        return Some(IdentityOutcome::Counterexample {
            check: "defect-chi-independence".into(),
            detail: format!("{sheaf:?}"),
        });
    }
    let (first, second) = sheaf
        .delta_w_lower_bound(&curve, &pol)
        .expect("lengths match");
    if delta_w < first || delta_w < second || first < second {
        return Some(IdentityOutcome::Counterexample {
            check: "defect-lower-bound".into(),
            detail: format!("{sheaf:?} delta_w={delta_w} bounds=({first},{second})"),
        });
    }
    let identity = sheaf.w_degree(&curve, &pol).expect("lengths match")
        - sheaf
            .sum_component_degrees(&curve, &pol)
            .expect("lengths match");
    if identity != delta_w {
        return Some(IdentityOutcome::Counterexample {
            check: "defect-degree-identity".into(),
            detail: format!("{sheaf:?}"),
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodness::is_good;
    use crate::rational::ratio;

    fn base_curve() -> NodalCurve {
        NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap()
    }

    fn halves() -> Polarization {
        Polarization::from_ratios(&[(1, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn bruteforce_goodness_examples() {
        let report = goodness_bruteforce(&base_curve(), &halves(), 6).unwrap();
        assert_eq!(report.verdict, GoodnessVerdict::Good);
        assert_eq!(report.minimum, rat(0));

        let skew = Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        let report = goodness_bruteforce(&base_curve(), &skew, 6).unwrap();
        assert_eq!(report.verdict, GoodnessVerdict::NotGood);
        assert_eq!(report.minimum, ratio(-3, 2));
        assert_eq!(report.witness_multirank, vec![6, 0]);
    }

    #[test]
    fn bruteforce_rejects_tiny_range() {
        assert!(matches!(
            goodness_bruteforce(&base_curve(), &halves(), 1),
            Err(OracleError::RangeTooSmall { r_max: 1 })
        ));
    }

    #[test]
    fn bruteforce_agrees_with_lp_on_examples() {
        let curves = [
            NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap(),
            NodalCurve::new(vec![2, 3], vec![(0, 1); 3]).unwrap(),
            NodalCurve::new(vec![3, 3], vec![(0, 1), (0, 1)]).unwrap(),
        ];
        let weight_sets: Vec<Vec<(i64, i64)>> = vec![
            vec![(1, 2), (1, 2)],
            vec![(1, 4), (3, 4)],
            vec![(1, 3), (2, 3)],
            vec![(2, 5), (3, 5)],
        ];
        for curve in &curves {
            for weights in &weight_sets {
                let pol = Polarization::from_ratios(weights).unwrap();
                let lp = is_good(curve, &pol).unwrap();
                let brute = goodness_bruteforce(curve, &pol, 6).unwrap();
                assert_eq!(
                    lp.verdict, brute.verdict,
                    "curve {curve:?} weights {weights:?}"
                );
            }
        }
    }

    #[test]
    fn bruteforce_critical_values_examples() {
        let curve = base_curve();
        let pol = halves();
        let ty = SystemType::from_ints(2, 1, 1).unwrap();
        assert!(critical_values_bruteforce(&curve, &pol, &ty, &rat(1))
            .unwrap()
            .is_empty());

        let ty = SystemType::from_ints(2, 2, 1).unwrap();
        assert_eq!(
            critical_values_bruteforce(&curve, &pol, &ty, &rat(2)).unwrap(),
            vec![rat(1), ratio(4, 3)]
        );

        // window below the least candidate
        assert!(critical_values_bruteforce(&curve, &pol, &ty, &ratio(1, 2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn spanning_tree_bruteforce_matches_matrix_tree() {
        let curves = [
            NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap(),
            NodalCurve::new(vec![2, 2], vec![(0, 1); 3]).unwrap(),
            NodalCurve::new(vec![2, 2, 2], vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
            NodalCurve::new(
                vec![2, 2, 2, 2],
                vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        ];
        for curve in &curves {
            assert_eq!(
                spanning_trees_bruteforce(curve),
                curve.spanning_tree_count()
            );
        }
    }

    #[test]
    fn identity_suite_passes() {
        let report = identity_suite(0, 10_000).unwrap();
        assert!(report.passed(), "{:?}", report.outcome);
    }

    #[test]
    fn identity_suite_rejects_zero_trials() {
        assert!(matches!(identity_suite(0, 0), Err(OracleError::ZeroTrials)));
    }

    #[test]
    fn mutated_beta_is_caught() {
        // flip the sign of the k-term
        let p_a = 4;
        let (r, d, k) = (3, 2, 1);
        let pa1 = (p_a - 1) as i128;
        let wrong = (r as i128) * (r as i128) * pa1
            + 1
            + (k as i128) * ((k as i128) - (d as i128) + (r as i128) * pa1);
        assert!(!beta_identity_holds(p_a, r, d, k, wrong));
        let right = (r as i128) * (r as i128) * pa1 + 1
            - (k as i128) * ((k as i128) - (d as i128) + (r as i128) * pa1);
        assert!(beta_identity_holds(p_a, r, d, k, right));
    }
}
