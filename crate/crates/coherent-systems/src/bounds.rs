//! Critical values of the stability parameter and the threshold chain.
//!
//! For a system type `(r, d, k)` with `0 < k < r`, walls of the chamber
//! structure are the finitely many values
//!
//! ```text
//! alpha = (r d' - r' d) / (r' k - r k')
//! ```
//!
//! produced by numerically admissible proper subsystems. The thresholds
//! `alpha_I <= alpha_T <= alpha_S` cut down the behaviour of semistable
//! systems near the right end `d/(r-k)` of the parameter range, and the
//! terminal window is the last chamber.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::curve::{NodalCurve, Polarization, ValidationError};
use crate::goodness::{is_good, lambda_w, GoodnessError};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("w-rank must be positive, got {r}")]
    NonPositiveRank { r: Rational },
    #[error("section count k = {k} must satisfy 0 < k < r = {r}")]
    SectionCountOutOfRange { k: u32, r: Rational },
    #[error("enumeration window must be positive, got {m}")]
    EmptyWindow { m: Rational },
    #[error("the polarization is not good; this threshold is only defined for good polarizations")]
    NotGood,
    #[error(
        "w-degree must be positive, got {d} (the moduli spaces are empty for every positive alpha)"
    )]
    NonPositiveDegree { d: Rational },
    #[error("quotient subsheaf range is empty: r - k = {rk} is not above w_m = {wm}")]
    EmptySubsheafRange { rk: Rational, wm: Rational },
    #[error("multirank enumeration bound {bound} is too large")]
    EnumerationTooLarge { bound: Rational },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

impl From<GoodnessError> for BoundsError {
    fn from(e: GoodnessError) -> Self {
        match e {
            GoodnessError::Validation(v) => BoundsError::Validation(v),
        }
    }
}

/// System type `(r, d, k)`: w-rank, w-degree and section count, with
/// `r > 0` and `0 < k < r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemType {
    r: Rational,
    d: Rational,
    k: u32,
}

impl SystemType {
    pub fn new(r: Rational, d: Rational, k: u32) -> Result<Self, BoundsError> {
        if !r.is_positive() {
            return Err(BoundsError::NonPositiveRank { r });
        }
        if k == 0 || rat(k as i64) >= r {
            return Err(BoundsError::SectionCountOutOfRange { k, r });
        }
        Ok(SystemType { r, d, k })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(r: i64, d: i64, k: u32) -> Result<Self, BoundsError> {
        SystemType::new(rat(r), rat(d), k)
    }

    pub fn w_rank(&self) -> &Rational {
        &self.r
    }

    pub fn w_degree(&self) -> &Rational {
        &self.d
    }

    pub fn sections(&self) -> u32 {
        self.k
    }

    /// `r - k`, always positive.
    pub fn quotient_rank(&self) -> Rational {
        &self.r - rat(self.k as i64)
    }

    /// Right end of the parameter range for a good polarization,
    /// `d / (r - k)`.
    pub fn terminal_bound(&self) -> Rational {
        &self.d / self.quotient_rank()
    }
}

/// One numerical subsystem producing a critical value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub k_prime: u32,
    pub multirank: Vec<u64>,
    pub chi_prime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalValue {
    pub alpha: Rational,
    pub witnesses: Vec<Witness>,
}

/// Which subsystem constraints to impose during enumeration. `Tight` adds
/// `r' <= r` on top of the per-component bound `r'_i <= floor(r / w_m)`;
/// `Permissive` keeps only the per-component bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    #[default]
    Tight,
    Permissive,
}

fn component_bound(ty: &SystemType, pol: &Polarization) -> Result<u64, BoundsError> {
    let bound = (ty.w_rank() / pol.min_weight()).floor();
    bound
        .to_integer()
        .to_u64()
        .filter(|&b| b <= 1_000_000)
        .ok_or(BoundsError::EnumerationTooLarge { bound })
}

/// All multirank tuples with entries in `0..=bound`, keyed by their w-rank,
/// filtered to `0 < r'` and, in tight mode, `r' <= r`.
fn multiranks_by_w_rank(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
    bound: u64,
    mode: EnumerationMode,
) -> BTreeMap<Rational, Vec<Vec<u64>>> {
    let gamma = curve.gamma();
    let mut by_rank: BTreeMap<Rational, Vec<Vec<u64>>> = BTreeMap::new();
    let mut tuple = vec![0u64; gamma];
    loop {
        // advance the odometer
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
        let w_rank: Rational = tuple
            .iter()
            .zip(pol.weights())
            .map(|(&t, w)| w * rat(t as i64))
            .sum();
        debug_assert!(w_rank.is_positive());
        if mode == EnumerationMode::Tight && w_rank > *ty.w_rank() {
            continue;
        }
        by_rank.entry(w_rank).or_default().push(tuple.clone());
    }
    by_rank
}

/// Integers strictly inside the open rational interval `(lo, hi)`.
fn integers_strictly_between(lo: &Rational, hi: &Rational) -> impl Iterator<Item = i64> {
    let first = lo
        .floor()
        .to_integer()
        .to_i64()
        .expect("window fits in i64")
        + 1;
    let last = hi.ceil().to_integer().to_i64().expect("window fits in i64") - 1;
    first..=last
}

/// Enumerates every critical value in the open window `(0, M)` together
/// with all witnesses, in strictly increasing order.
pub fn enumerate_critical_values(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
    window: &Rational,
) -> Result<Vec<CriticalValue>, BoundsError> {
    enumerate_critical_values_with(curve, pol, ty, window, EnumerationMode::Tight)
}

pub fn enumerate_critical_values_with(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
    window: &Rational,
    mode: EnumerationMode,
) -> Result<Vec<CriticalValue>, BoundsError> {
    crate::curve::validate(curve, pol)?;
    if !window.is_positive() {
        return Err(BoundsError::EmptyWindow { m: window.clone() });
    }
    let bound = component_bound(ty, pol)?;
    let by_rank = multiranks_by_w_rank(curve, pol, ty, bound, mode);

    let chi0 = rat(curve.chi_structure_sheaf());
    let r = ty.w_rank();
    let d = ty.w_degree();
    let k = rat(ty.sections() as i64);

    let mut found: BTreeMap<Rational, Vec<Witness>> = BTreeMap::new();
    for k_prime in 0..=ty.sections() {
        let k_prime_rat = rat(k_prime as i64);
        for (r_prime, tuples) in &by_rank {
            let denom = r_prime * &k - r * &k_prime_rat;
            if denom.is_zero() {
                continue;
            }
            // alpha = (r chi' - r r' chi0 - r' d) / denom; solve the strict
            // window 0 < alpha < M for chi'.
            let base = r_prime * &chi0 + r_prime * d / r;
            let span = window * &denom / r;
            let (lo, hi) = if denom.is_positive() {
                (base.clone(), &base + &span)
            } else {
                (&base + &span, base.clone())
            };
            for chi_prime in integers_strictly_between(&lo, &hi) {
                let d_prime = rat(chi_prime) - r_prime * &chi0;
                let alpha = (r * &d_prime - r_prime * d) / &denom;
                debug_assert!(alpha.is_positive() && alpha < *window);
                let witnesses = found.entry(alpha).or_default();
                for tuple in tuples {
                    witnesses.push(Witness {
                        k_prime,
                        multirank: tuple.clone(),
                        chi_prime,
                    });
                }
            }
        }
    }

    Ok(found
        .into_iter()
        .map(|(alpha, mut witnesses)| {
            witnesses.sort();
            CriticalValue { alpha, witnesses }
        })
        .collect())
}

/// `(d + r lambda_w) / (r - k)`: semistable moduli are empty strictly above
/// this value and stable moduli are empty at and above it.
pub fn alpha_range_bound(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<Rational, BoundsError> {
    let lambda = lambda_w(curve, pol)?;
    Ok((ty.w_degree() + ty.w_rank() * lambda) / ty.quotient_rank())
}

fn require_good_and_positive_degree(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<(), BoundsError> {
    if !is_good(curve, pol)?.is_good() {
        return Err(BoundsError::NotGood);
    }
    if !ty.w_degree().is_positive() {
        return Err(BoundsError::NonPositiveDegree {
            d: ty.w_degree().clone(),
        });
    }
    Ok(())
}

/// `alpha_I = (k - w_m) d / (k (r - k + w_m))`: above it the evaluation map
/// of every semistable system is injective.
pub fn alpha_injectivity_threshold(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<Rational, BoundsError> {
    require_good_and_positive_degree(curve, pol, ty)?;
    let w_min = pol.min_weight();
    let k = rat(ty.sections() as i64);
    let alpha = (&k - w_min) * ty.w_degree() / (&k * (ty.quotient_rank() + w_min));
    // strictly positive whenever w_m < 1; a single-component curve with
    // k = 1 collapses it to 0, where injectivity is automatic
    debug_assert!(!alpha.is_negative() && alpha < ty.terminal_bound());
    Ok(alpha)
}

/// The raw torsion bound `d/(r-k) - r/(k(r-k))`, before clamping by
/// `alpha_I`. May be negative.
pub fn alpha_torsion_tilde(ty: &SystemType) -> Rational {
    let k = rat(ty.sections() as i64);
    ty.terminal_bound() - ty.w_rank() / (k * ty.quotient_rank())
}

/// `alpha_T = max(alpha_I, alpha_T_tilde)`: above it the cokernel of the
/// evaluation map has depth one.
pub fn alpha_torsion_threshold(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<Rational, BoundsError> {
    let alpha_i = alpha_injectivity_threshold(curve, pol, ty)?;
    Ok(alpha_i.max(alpha_torsion_tilde(ty)))
}

/// Minimum positive slope gap `d'/s' - d/(r-k)` in `(0, 1]` over numerically
/// admissible proper subsheaves of the quotient, or 1 when no gap lands in
/// that interval.
pub fn slope_gap_q(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<Rational, BoundsError> {
    require_good_and_positive_degree(curve, pol, ty)?;
    let w_min = pol.min_weight().clone();
    let quotient_rank = ty.quotient_rank();
    if quotient_rank <= w_min {
        return Err(BoundsError::EmptySubsheafRange {
            rk: quotient_rank,
            wm: w_min,
        });
    }
    let bound = (&quotient_rank / &w_min).floor();
    let bound = bound
        .to_integer()
        .to_u64()
        .filter(|&b| b <= 1_000_000)
        .ok_or(BoundsError::EnumerationTooLarge {
            bound: &quotient_rank / &w_min,
        })?;

    let chi0 = rat(curve.chi_structure_sheaf());
    let quotient_slope = ty.terminal_bound();
    let one = rat(1);

    // Collect the achievable sub-w-ranks s' with w_m <= s' < r - k.
    let gamma = curve.gamma();
    let mut ranks: std::collections::BTreeSet<Rational> = std::collections::BTreeSet::new();
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
        let s_prime: Rational = tuple
            .iter()
            .zip(pol.weights())
            .map(|(&t, w)| w * rat(t as i64))
            .sum();
        if s_prime >= w_min && s_prime < quotient_rank {
            ranks.insert(s_prime);
        }
    }

    let mut best: Option<Rational> = None;
    for s_prime in ranks {
        // Gaps for this s' form the arithmetic progression
        // (chi' - s' chi0)/s' - d/(r-k), chi' in Z; only the smallest
        // positive one matters.
        let threshold = &s_prime * (&quotient_slope + &chi0);
        let first_chi = threshold.floor().to_integer() + 1;
        let d_prime = Rational::from(first_chi) - &s_prime * &chi0;
        let gap = d_prime / &s_prime - &quotient_slope;
        debug_assert!(gap.is_positive());
        if gap <= one && best.as_ref().is_none_or(|b| gap < *b) {
            best = Some(gap);
        }
    }
    Ok(best.unwrap_or(one))
}

/// `alpha_S = max(alpha_T, d/(r-k) - q r w_m / (k (r - k - w_m)))`: above it
/// every semistable system is a BGN extension with semistable quotient.
/// When `r - k <= w_m` the quotient admits no proper subsheaf in range and
/// the threshold collapses to `alpha_T`.
pub fn alpha_bgn_threshold(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<Rational, BoundsError> {
    let alpha_t = alpha_torsion_threshold(curve, pol, ty)?;
    let w_min = pol.min_weight().clone();
    if ty.quotient_rank() <= w_min {
        return Ok(alpha_t);
    }
    let q = slope_gap_q(curve, pol, ty)?;
    let k = rat(ty.sections() as i64);
    let raw = ty.terminal_bound() - q * ty.w_rank() * &w_min / (k * (ty.quotient_rank() - &w_min));
    let alpha_s = alpha_t.max(raw);
    debug_assert!(alpha_s < ty.terminal_bound());
    Ok(alpha_s)
}

/// The terminal window `(alpha_L, d/(r-k))` where `alpha_L` is the largest
/// critical value below `d/(r-k)`, or 0 when there is none.
pub fn terminal_window(
    curve: &NodalCurve,
    pol: &Polarization,
    ty: &SystemType,
) -> Result<(Rational, Rational), BoundsError> {
    require_good_and_positive_degree(curve, pol, ty)?;
    let upper = ty.terminal_bound();
    let critical = enumerate_critical_values(curve, pol, ty, &upper)?;
    let alpha_l = critical
        .last()
        .map(|cv| cv.alpha.clone())
        .unwrap_or_else(Rational::zero);
    Ok((alpha_l, upper))
}
