//! Numerical invariants of depth-one sheaves.
//!
//! A sheaf enters only through its numerical shadow: the multirank (rank of
//! the restriction modulo torsion on each component), the rank of the free
//! part of the stalk at each node, and the Euler characteristic. Every
//! formula here depends on nothing else.

use num_traits::Zero;
use thiserror::Error;

use crate::curve::{NodalCurve, Polarization};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("multirank has {got} entries for a curve with {expected} components")]
    MultirankLength { expected: usize, got: usize },
    #[error("node free ranks have {got} entries for a curve with {expected} nodes")]
    NodeRankLength { expected: usize, got: usize },
    #[error("multirank is identically zero")]
    ZeroMultirank,
    #[error("free rank {free_rank} at node {node} exceeds min of adjacent ranks {max}")]
    FreeRankTooLarge {
        node: usize,
        free_rank: u64,
        max: u64,
    },
    #[error("polarization has {got} weights for a multirank of length {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("w-rank is zero")]
    ZeroWRank,
}

/// Numerical shadow of a depth-one sheaf on a fixed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthOneNumerics {
    multirank: Vec<u64>,
    node_free_ranks: Vec<u64>,
    euler_char: i64,
}

impl DepthOneNumerics {
    /// Validates the shadow against the curve: lengths match, the multirank
    /// is not identically zero, and each node free rank is at most the
    /// minimum of the two adjacent component ranks.
    pub fn new(
        curve: &NodalCurve,
        multirank: Vec<u64>,
        node_free_ranks: Vec<u64>,
        euler_char: i64,
    ) -> Result<Self, SheafError> {
        if multirank.len() != curve.gamma() {
            return Err(SheafError::MultirankLength {
                expected: curve.gamma(),
                got: multirank.len(),
            });
        }
        if node_free_ranks.len() != curve.delta() {
            return Err(SheafError::NodeRankLength {
                expected: curve.delta(),
                got: node_free_ranks.len(),
            });
        }
        if multirank.iter().all(|&r| r == 0) {
            return Err(SheafError::ZeroMultirank);
        }
        for (node, (&(a, b), &s)) in curve.nodes().iter().zip(&node_free_ranks).enumerate() {
            let max = multirank[a].min(multirank[b]);
            if s > max {
                return Err(SheafError::FreeRankTooLarge {
                    node,
                    free_rank: s,
                    max,
                });
            }
        }
        Ok(DepthOneNumerics {
            multirank,
            node_free_ranks,
            euler_char,
        })
    }

    /// Shadow of the structure sheaf: multirank `1`, free rank 1 at every
    /// node, Euler characteristic `chi(O_C)`.
    pub fn structure_sheaf(curve: &NodalCurve) -> Self {
        DepthOneNumerics {
            multirank: vec![1; curve.gamma()],
            node_free_ranks: vec![1; curve.delta()],
            euler_char: curve.chi_structure_sheaf(),
        }
    }

    /// Shadow of a locally free sheaf of rank `rank`: uniform multirank and
    /// maximal free rank at every node.
    pub fn locally_free(curve: &NodalCurve, rank: u64, euler_char: i64) -> Self {
        DepthOneNumerics {
            multirank: vec![rank; curve.gamma()],
            node_free_ranks: vec![rank; curve.delta()],
            euler_char,
        }
    }

    pub fn multirank(&self) -> &[u64] {
        &self.multirank
    }

    pub fn node_free_ranks(&self) -> &[u64] {
        &self.node_free_ranks
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    /// `wrank = sum w_i r_i`.
    pub fn w_rank(&self, pol: &Polarization) -> Result<Rational, SheafError> {
        if pol.len() != self.multirank.len() {
            return Err(SheafError::WeightLength {
                expected: self.multirank.len(),
                got: pol.len(),
            });
        }
        Ok(self
            .multirank
            .iter()
            .zip(pol.weights())
            .map(|(&r, w)| w * rat(r as i64))
            .sum())
    }

    /// `wdeg = chi - wrank * chi(O_C)`.
    pub fn w_degree(&self, curve: &NodalCurve, pol: &Polarization) -> Result<Rational, SheafError> {
        let wrank = self.w_rank(pol)?;
        Ok(rat(self.euler_char) - wrank * rat(curve.chi_structure_sheaf()))
    }

    /// `wdeg / wrank`.
    pub fn w_slope(&self, curve: &NodalCurve, pol: &Polarization) -> Result<Rational, SheafError> {
        let wrank = self.w_rank(pol)?;
        if wrank.is_zero() {
            return Err(SheafError::ZeroWRank);
        }
        Ok(self.w_degree(curve, pol)? / wrank)
    }

    /// Defect `Delta_w = sum r_i (1 - g_i - w_i chi(O_C)) - sum_p s_p`.
    /// Independent of the Euler characteristic.
    pub fn delta_w(&self, curve: &NodalCurve, pol: &Polarization) -> Result<Rational, SheafError> {
        if pol.len() != self.multirank.len() {
            return Err(SheafError::WeightLength {
                expected: self.multirank.len(),
                got: pol.len(),
            });
        }
        let chi0 = rat(curve.chi_structure_sheaf());
        let rank_part: Rational = self
            .multirank
            .iter()
            .zip(curve.genera())
            .zip(pol.weights())
            .map(|((&r, &g), w)| rat(r as i64) * (rat(1 - g) - w * &chi0))
            .sum();
        let free_part: i64 = self.node_free_ranks.iter().map(|&s| s as i64).sum();
        Ok(rank_part - rat(free_part))
    }

    /// The two lower bounds for the defect:
    /// `(-(r_M - wrank)(p_a - 1), -(1/w_m - 1) wrank (p_a - 1))`.
    /// The first is always at least the second.
    pub fn delta_w_lower_bound(
        &self,
        curve: &NodalCurve,
        pol: &Polarization,
    ) -> Result<(Rational, Rational), SheafError> {
        let wrank = self.w_rank(pol)?;
        let max_rank = rat(*self.multirank.iter().max().expect("nonempty") as i64);
        let genus_term = rat(curve.arithmetic_genus() - 1);
        let first = -(max_rank - &wrank) * &genus_term;
        let w_min = pol.min_weight();
        let second = -(rat(1) / w_min - rat(1)) * wrank * genus_term;
        Ok((first, second))
    }

    /// `sum deg(E_i) = wdeg - Delta_w`.
    pub fn sum_component_degrees(
        &self,
        curve: &NodalCurve,
        pol: &Polarization,
    ) -> Result<Rational, SheafError> {
        Ok(self.w_degree(curve, pol)? - self.delta_w(curve, pol)?)
    }

    /// Shadow with every numeric entry scaled by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        DepthOneNumerics {
            multirank: self.multirank.iter().map(|r| r * factor).collect(),
            node_free_ranks: self.node_free_ranks.iter().map(|s| s * factor).collect(),
            euler_char: self.euler_char * factor as i64,
        }
    }
}

/// Defect evaluated directly from raw data, without building a shadow.
/// Used by enumerations that sweep multiranks outside the stalk constraints.
pub fn delta_w_raw(
    curve: &NodalCurve,
    pol: &Polarization,
    multirank: &[u64],
    node_free_ranks: &[u64],
) -> Rational {
    let chi0 = rat(curve.chi_structure_sheaf());
    let rank_part: Rational = multirank
        .iter()
        .zip(curve.genera())
        .zip(pol.weights())
        .map(|((&r, &g), w)| rat(r as i64) * (rat(1 - g) - w * &chi0))
        .sum();
    let free_part: i64 = node_free_ranks.iter().map(|&s| s as i64).sum();
    rank_part - rat(free_part)
}

/// `wdeg` of a shadow given as raw data with an exact rational chi.
pub fn w_degree_raw(curve: &NodalCurve, wrank: &Rational, chi: &Rational) -> Rational {
    chi - wrank * rat(curve.chi_structure_sheaf())
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

    #[test]
    fn w_rank_examples() {
        let curve = base_curve();
        let sheaf = DepthOneNumerics::new(&curve, vec![1, 1], vec![0], 0).unwrap();
        assert_eq!(sheaf.w_rank(&halves()).unwrap(), rat(1));
        let skew = Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        assert_eq!(sheaf.w_rank(&skew).unwrap(), rat(1));

        let partial = DepthOneNumerics::new(&curve, vec![1, 0], vec![0], 0).unwrap();
        assert_eq!(partial.w_rank(&halves()).unwrap(), ratio(1, 2));

        let mixed = DepthOneNumerics::new(&curve, vec![2, 3], vec![2], 0).unwrap();
        assert_eq!(mixed.w_rank(&skew).unwrap(), ratio(11, 4));
    }

    #[test]
    fn w_degree_examples() {
        let curve = base_curve();
        let structure = DepthOneNumerics::structure_sheaf(&curve);
        assert_eq!(structure.w_degree(&curve, &halves()).unwrap(), rat(0));

        let partial = DepthOneNumerics::new(&curve, vec![1, 0], vec![0], 0).unwrap();
        assert_eq!(partial.w_degree(&curve, &halves()).unwrap(), ratio(3, 2));

        for e in [-4, 0, 5] {
            let full = DepthOneNumerics::new(&curve, vec![1, 1], vec![1], e).unwrap();
            assert_eq!(full.w_degree(&curve, &halves()).unwrap(), rat(e + 3));
        }
    }

    #[test]
    fn w_slope_examples() {
        let curve = base_curve();
        let structure = DepthOneNumerics::structure_sheaf(&curve);
        assert_eq!(structure.w_slope(&curve, &halves()).unwrap(), rat(0));

        let partial = DepthOneNumerics::new(&curve, vec![1, 0], vec![0], 0).unwrap();
        assert_eq!(partial.w_slope(&curve, &halves()).unwrap(), rat(3));
    }

    #[test]
    fn w_slope_is_scale_invariant() {
        let curve = base_curve();
        let sheaf = DepthOneNumerics::new(&curve, vec![2, 1], vec![1], -5).unwrap();
        let slope = sheaf.w_slope(&curve, &halves()).unwrap();
        for factor in [2, 3, 7] {
            assert_eq!(
                sheaf.scaled(factor).w_slope(&curve, &halves()).unwrap(),
                slope
            );
        }
    }

    #[test]
    fn delta_w_examples() {
        let curve = base_curve();
        for (rank, chi) in [(1, 0), (2, -7), (3, 4)] {
            let free = DepthOneNumerics::locally_free(&curve, rank, chi);
            assert_eq!(free.delta_w(&curve, &halves()).unwrap(), rat(0));
        }

        let torsionful = DepthOneNumerics::new(&curve, vec![1, 1], vec![0], 0).unwrap();
        assert_eq!(torsionful.delta_w(&curve, &halves()).unwrap(), rat(1));

        let doubled = torsionful.scaled(2);
        assert_eq!(doubled.delta_w(&curve, &halves()).unwrap(), rat(2));
    }

    #[test]
    fn delta_w_ignores_euler_characteristic() {
        let curve = base_curve();
        let a = DepthOneNumerics::new(&curve, vec![2, 1], vec![1], -3).unwrap();
        let b = DepthOneNumerics::new(&curve, vec![2, 1], vec![1], 12).unwrap();
        assert_eq!(
            a.delta_w(&curve, &halves()).unwrap(),
            b.delta_w(&curve, &halves()).unwrap()
        );
    }

    #[test]
    fn lower_bound_examples() {
        let curve = base_curve();
        let skew = Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        let sheaf = DepthOneNumerics::new(&curve, vec![1, 0], vec![0], 0).unwrap();
        let (first, second) = sheaf.delta_w_lower_bound(&curve, &skew).unwrap();
        assert_eq!(first, ratio(-9, 4));
        assert_eq!(second, ratio(-9, 4));

        let free = DepthOneNumerics::locally_free(&curve, 3, 0);
        let (first, _) = free.delta_w_lower_bound(&curve, &halves()).unwrap();
        assert_eq!(first, rat(0));
    }

    #[test]
    fn sum_component_degrees_examples() {
        let curve = base_curve();
        let structure = DepthOneNumerics::structure_sheaf(&curve);
        assert_eq!(
            structure.sum_component_degrees(&curve, &halves()).unwrap(),
            rat(0)
        );

        let torsionful = DepthOneNumerics::new(&curve, vec![1, 1], vec![0], -2).unwrap();
        assert_eq!(
            torsionful.sum_component_degrees(&curve, &halves()).unwrap(),
            rat(0)
        );

        let free = DepthOneNumerics::new(&curve, vec![1, 1], vec![1], 4).unwrap();
        assert_eq!(
            free.sum_component_degrees(&curve, &halves()).unwrap(),
            rat(7)
        );
    }

    #[test]
    fn defect_is_w_degree_minus_component_degrees() {
        let curve = NodalCurve::new(vec![2, 3, 2], vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let pol = Polarization::from_ratios(&[(1, 4), (1, 2), (1, 4)]).unwrap();
        let sheaf = DepthOneNumerics::new(&curve, vec![2, 1, 3], vec![1, 1, 2], -4).unwrap();
        let lhs = sheaf.delta_w(&curve, &pol).unwrap();
        let rhs = sheaf.w_degree(&curve, &pol).unwrap()
            - sheaf.sum_component_degrees(&curve, &pol).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_invalid_shadows() {
        let curve = base_curve();
        assert_eq!(
            DepthOneNumerics::new(&curve, vec![0, 0], vec![0], 0).unwrap_err(),
            SheafError::ZeroMultirank
        );
        assert_eq!(
            DepthOneNumerics::new(&curve, vec![1, 2], vec![2], 0).unwrap_err(),
            SheafError::FreeRankTooLarge {
                node: 0,
                free_rank: 2,
                max: 1
            }
        );
        assert!(matches!(
            DepthOneNumerics::new(&curve, vec![1], vec![0], 0).unwrap_err(),
            SheafError::MultirankLength { .. }
        ));
        let sheaf = DepthOneNumerics::structure_sheaf(&curve);
        let short = Polarization::from_ratios(&[(1, 1)]).unwrap();
        assert!(matches!(
            sheaf.w_rank(&short).unwrap_err(),
            SheafError::WeightLength { .. }
        ));
    }
}
