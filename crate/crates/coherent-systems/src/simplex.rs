//! Exact-rational primal simplex.
//!
//! Dense two-phase tableau over [`Rational`] with Bland's pivoting rule, so
//! the solver terminates on every input and never rounds. Problem sizes in
//! this crate are tiny (a handful of variables), so no sparsity or basis
//! factorization is attempted.

use num_traits::{Signed, Zero};

use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coefficients,
            relation,
            rhs,
        }
    }
}

/// Minimize `objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    columns: usize,
}

enum PivotResult {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, leaving_row: usize, entering: usize) {
        let pivot = self.rows[leaving_row][entering].clone();
        for value in self.rows[leaving_row].iter_mut() {
            *value /= &pivot;
        }
        self.rhs[leaving_row] /= &pivot;
        for i in 0..self.rows.len() {
            if i == leaving_row {
                continue;
            }
            let factor = self.rows[i][entering].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.columns {
                let delta = &factor * &self.rows[leaving_row][j];
                self.rows[i][j] -= delta;
            }
            let delta = &factor * &self.rhs[leaving_row];
            self.rhs[i] -= delta;
        }
        self.basis[leaving_row] = entering;
    }

    /// Runs Bland-rule pivoting for the given cost vector until optimality
    /// or unboundedness.
    fn run(&mut self, cost: &[Rational]) -> PivotResult {
        let mut reduced = self.reduced_costs(cost);
        loop {
            let entering = match (0..self.columns).find(|&j| reduced[j].is_negative()) {
                Some(j) => j,
                None => return PivotResult::Optimal,
            };
            let mut leaving: Option<usize> = None;
            let mut best_ratio: Option<Rational> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][entering].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][entering];
                let better = match &best_ratio {
                    None => true,
                    Some(best) => {
                        ratio < *best
                            || (ratio == *best
                                && self.basis[i] < self.basis[leaving.expect("set with ratio")])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    leaving = Some(i);
                }
            }
            let leaving_row = match leaving {
                Some(i) => i,
                None => return PivotResult::Unbounded,
            };
            self.pivot(leaving_row, entering);
            reduced = self.reduced_costs(cost);
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut reduced = cost.to_vec();
        for (row, &basic) in self.rows.iter().zip(&self.basis) {
            let basic_cost = &cost[basic];
            if basic_cost.is_zero() {
                continue;
            }
            for j in 0..self.columns {
                let delta = basic_cost * &row[j];
                reduced[j] -= delta;
            }
        }
        reduced
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&basic, value)| &cost[basic] * value)
            .sum()
    }
}

/// Solves the program exactly. Variables are implicitly nonnegative.
pub fn minimize(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    debug_assert!(lp.constraints.iter().all(|c| c.coefficients.len() == n));

    // Orient each row so its right-hand side is nonnegative.
    let mut oriented: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let coefficients = c.coefficients.iter().map(|a| -a).collect();
                let relation = match c.relation {
                    Relation::LessEq => Relation::GreaterEq,
                    Relation::Equal => Relation::Equal,
                    Relation::GreaterEq => Relation::LessEq,
                };
                (coefficients, relation, -&c.rhs)
            } else {
                (c.coefficients.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    let m = oriented.len();
    let slack_count = oriented
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Equal)
        .count();
    let artificial_count = oriented
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::LessEq)
        .count();
    let structural_and_slack = n + slack_count;
    let columns = structural_and_slack + artificial_count;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_slack = n;
    let mut next_artificial = structural_and_slack;
    for (coefficients, relation, b) in oriented.drain(..) {
        let mut row = vec![Rational::zero(); columns];
        row[..n].clone_from_slice(&coefficients);
        match relation {
            Relation::LessEq => {
                row[next_slack] = rat(1);
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::GreaterEq => {
                row[next_slack] = rat(-1);
                next_slack += 1;
                row[next_artificial] = rat(1);
                basis.push(next_artificial);
                next_artificial += 1;
            }
            Relation::Equal => {
                row[next_artificial] = rat(1);
                basis.push(next_artificial);
                next_artificial += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let mut tableau = Tableau {
        rows,
        rhs,
        basis,
        columns,
    };

    // Phase one: drive the artificial variables to zero.
    if artificial_count > 0 {
        let mut phase_one_cost = vec![Rational::zero(); columns];
        for item in phase_one_cost
            .iter_mut()
            .take(columns)
            .skip(structural_and_slack)
        {
            *item = rat(1);
        }
        match tableau.run(&phase_one_cost) {
            PivotResult::Optimal => {}
            PivotResult::Unbounded => unreachable!("phase-one objective is bounded below by 0"),
        }
        if tableau.objective_value(&phase_one_cost).is_positive() {
            return LpOutcome::Infeasible;
        }
        // Pivot lingering artificial variables out of the basis; rows that
        // cannot pivot are redundant and dropped.
        let mut row_index = 0;
        while row_index < tableau.rows.len() {
            if tableau.basis[row_index] >= structural_and_slack {
                let candidate =
                    (0..structural_and_slack).find(|&j| !tableau.rows[row_index][j].is_zero());
                match candidate {
                    Some(j) => tableau.pivot(row_index, j),
                    None => {
                        tableau.rows.remove(row_index);
                        tableau.rhs.remove(row_index);
                        tableau.basis.remove(row_index);
                        continue;
                    }
                }
            }
            row_index += 1;
        }
        for row in tableau.rows.iter_mut() {
            row.truncate(structural_and_slack);
        }
        tableau.columns = structural_and_slack;
    }

    // Phase two: the real objective, extended by zero on slack columns.
    let mut cost = vec![Rational::zero(); tableau.columns];
    cost[..n].clone_from_slice(&lp.objective);
    match tableau.run(&cost) {
        PivotResult::Optimal => {}
        PivotResult::Unbounded => return LpOutcome::Unbounded,
    }

    let mut point = vec![Rational::zero(); n];
    for (row, &basic) in tableau.basis.iter().enumerate() {
        if basic < n {
            point[basic] = tableau.rhs[row].clone();
        }
    }
    LpOutcome::Optimal {
        value: tableau.objective_value(&cost),
        point,
    }
}
