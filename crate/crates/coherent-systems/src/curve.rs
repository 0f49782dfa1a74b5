//! Combinatorial model of a nodal curve with smooth components.
//!
//! A curve is recorded purely through its dual multigraph: one vertex per
//! irreducible component (carrying the genus), one edge per node. Nodes
//! joining a component to itself are rejected, as is a disconnected graph.
//! A [`Polarization`] attaches a positive rational weight to each component,
//! with the weights summing to exactly 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("curve must have at least one component")]
    NoComponents,
    #[error("component {index} has genus {genus}; every genus must be at least 2")]
    GenusTooSmall { index: usize, genus: i64 },
    #[error("node {index} joins component {component} to itself")]
    SelfNode { index: usize, component: usize },
    #[error(
        "node {index} references component {component}, but there are only {gamma} components"
    )]
    NodeOutOfRange {
        index: usize,
        component: usize,
        gamma: usize,
    },
    #[error("the dual graph is disconnected")]
    Disconnected,
    #[error("weight {index} is {weight}; weights must lie strictly between 0 and 1")]
    WeightOutOfRange { index: usize, weight: Rational },
    #[error("weights sum to {sum}; they must sum to exactly 1")]
    WeightSumNotOne { sum: Rational },
    #[error("{weights} weights given for {components} components")]
    LengthMismatch { weights: usize, components: usize },
}

/// Dual multigraph of a connected nodal curve whose components are smooth
/// of genus at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalCurve {
    genera: Vec<i64>,
    nodes: Vec<(usize, usize)>,
}

impl NodalCurve {
    /// Builds a curve from component genera and nodes given as unordered
    /// pairs of component indices. Parallel nodes are allowed.
    pub fn new(genera: Vec<i64>, nodes: Vec<(usize, usize)>) -> Result<Self, ValidationError> {
        if genera.is_empty() {
            return Err(ValidationError::NoComponents);
        }
        for (index, &genus) in genera.iter().enumerate() {
            if genus < 2 {
                return Err(ValidationError::GenusTooSmall { index, genus });
            }
        }
        let gamma = genera.len();
        for (index, &(a, b)) in nodes.iter().enumerate() {
            if a >= gamma || b >= gamma {
                return Err(ValidationError::NodeOutOfRange {
                    index,
                    component: a.max(b),
                    gamma,
                });
            }
            if a == b {
                return Err(ValidationError::SelfNode {
                    index,
                    component: a,
                });
            }
        }
        let curve = NodalCurve { genera, nodes };
        if !curve.is_connected() {
            return Err(ValidationError::Disconnected);
        }
        Ok(curve)
    }

    /// Number of irreducible components.
    pub fn gamma(&self) -> usize {
        self.genera.len()
    }

    /// Number of nodes.
    pub fn delta(&self) -> usize {
        self.nodes.len()
    }

    pub fn genera(&self) -> &[i64] {
        &self.genera
    }

    pub fn nodes(&self) -> &[(usize, usize)] {
        &self.nodes
    }

    fn is_connected(&self) -> bool {
        let gamma = self.gamma();
        let mut adjacency = vec![Vec::new(); gamma];
        for &(a, b) in &self.nodes {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut seen = vec![false; gamma];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Arithmetic genus `p_a = sum g_i + delta - gamma + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        let genus_sum: i64 = self.genera.iter().sum();
        genus_sum + self.delta() as i64 - self.gamma() as i64 + 1
    }

    /// Euler characteristic of the structure sheaf, `1 - p_a`.
    pub fn chi_structure_sheaf(&self) -> i64 {
        1 - self.arithmetic_genus()
    }

    /// Number of node branches on each component; sums to `2 * delta`.
    pub fn node_degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.gamma()];
        for &(a, b) in &self.nodes {
            degrees[a] += 1;
            degrees[b] += 1;
        }
        degrees
    }

    /// True iff the dual graph is a tree.
    pub fn is_compact_type(&self) -> bool {
        self.delta() == self.gamma() - 1
    }

    /// Number of spanning trees of the dual multigraph, as the determinant
    /// of the reduced Laplacian computed by fraction-free integer elimination.
    pub fn spanning_tree_count(&self) -> BigInt {
        let gamma = self.gamma();
        if gamma == 1 {
            return BigInt::one();
        }
        let n = gamma - 1;
        let mut laplacian = vec![vec![BigInt::zero(); n]; n];
        for &(a, b) in &self.nodes {
            if a > 0 {
                laplacian[a - 1][a - 1] += 1;
            }
            if b > 0 {
                laplacian[b - 1][b - 1] += 1;
            }
            if a > 0 && b > 0 {
                laplacian[a - 1][b - 1] -= 1;
                laplacian[b - 1][a - 1] -= 1;
            }
        }
        bareiss_determinant(laplacian)
    }

    /// Number of nodes with both endpoints inside the component set.
    pub fn nodes_within(&self, selected: &[bool]) -> usize {
        self.nodes
            .iter()
            .filter(|&&(a, b)| selected[a] && selected[b])
            .count()
    }

    /// Number of nodes joining the component set to its complement.
    pub fn nodes_crossing(&self, selected: &[bool]) -> usize {
        self.nodes
            .iter()
            .filter(|&&(a, b)| selected[a] != selected[b])
            .count()
    }
}

/// Rational weights, one per component, each in (0,1), summing to exactly 1.
/// A single-component curve carries the unique weight vector `(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    weights: Vec<Rational>,
}

impl Polarization {
    pub fn new(weights: Vec<Rational>) -> Result<Self, ValidationError> {
        if weights.is_empty() {
            return Err(ValidationError::NoComponents);
        }
        let single = weights.len() == 1;
        for (index, weight) in weights.iter().enumerate() {
            let in_range = if single {
                weight.is_positive() && *weight <= rat(1)
            } else {
                weight.is_positive() && *weight < rat(1)
            };
            if !in_range {
                return Err(ValidationError::WeightOutOfRange {
                    index,
                    weight: weight.clone(),
                });
            }
        }
        let sum: Rational = weights.iter().sum();
        if sum != rat(1) {
            return Err(ValidationError::WeightSumNotOne { sum });
        }
        Ok(Polarization { weights })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self, ValidationError> {
        Polarization::new(
            pairs
                .iter()
                .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Minimum weight `w_m`.
    pub fn min_weight(&self) -> &Rational {
        self.weights.iter().min().expect("nonempty by construction")
    }
}

/// Checks that the polarization matches the curve component-for-component.
/// Both values already satisfy their own invariants by construction.
pub fn validate(curve: &NodalCurve, pol: &Polarization) -> Result<(), ValidationError> {
    if curve.gamma() != pol.len() {
        return Err(ValidationError::LengthMismatch {
            weights: pol.len(),
            components: curve.gamma(),
        });
    }
    Ok(())
}

/// Determinant of a square integer matrix by Bareiss one-step elimination.
/// Every intermediate division is exact, so the result is exact.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = numerator / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
