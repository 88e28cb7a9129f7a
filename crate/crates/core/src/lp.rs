//! Exact linear programming over the rationals.
//!
//! Dense two-phase simplex with Bland's rule. Problems solved here have a
//! handful of variables (one per strategy or opponent profile), so the
//! tableau is recomputed naively and no attempt is made at sparsity.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// One row `a · x (≤|≥|=) b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coefficients: Vec<Rational>, sense: Sense, rhs: Rational) -> Self {
        Constraint { coefficients, sense, rhs }
    }

    /// Exact check of the row at `x`.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// `maximize objective · x` subject to `constraints`, `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>, constraints: Vec<Constraint>) -> Self {
        LinearProgram { objective, constraints }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        check_widths(self.objective.len(), &self.constraints)
    }
}

fn check_widths(width: usize, constraints: &[Constraint]) -> Result<()> {
    for (row, c) in constraints.iter().enumerate() {
        if c.coefficients.len() != width {
            return Err(Error::DimensionMismatch(format!(
                "row {row} has {} coefficients, expected {width}",
                c.coefficients.len()
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rational, witness: Vec<Rational> },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal { .. } => LpStatus::Optimal,
            LpResult::Infeasible => LpStatus::Infeasible,
            LpResult::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            LpResult::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    columns: usize,
    originals: usize,
    first_artificial: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    /// Standard form with nonnegative right-hand sides: slack columns for
    /// `≤`, surplus for `≥`, artificials for `≥` and `=`.
    fn build(originals: usize, constraints: &[Constraint]) -> Tableau {
        let normalized: Vec<(Vec<Rational>, Sense, Rational)> = constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    };
                    (c.coefficients.iter().map(|a| -a).collect(), flipped, -&c.rhs)
                } else {
                    (c.coefficients.clone(), c.sense, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized.iter().filter(|(_, s, _)| *s != Sense::Eq).count();
        let artificials = normalized.iter().filter(|(_, s, _)| *s != Sense::Le).count();
        let first_artificial = originals + slacks;
        let columns = first_artificial + artificials;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack, mut artificial) = (originals, first_artificial);
        for (coefficients, sense, rhs) in normalized {
            let mut row = coefficients;
            row.resize(columns + 1, zero());
            row[columns] = rhs;
            match sense {
                Sense::Le => {
                    row[slack] = one();
                    basis.push(slack);
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -one();
                    slack += 1;
                    row[artificial] = one();
                    basis.push(artificial);
                    artificial += 1;
                }
                Sense::Eq => {
                    row[artificial] = one();
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, columns, originals, first_artificial }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &factor;
        }
        let pivot_row = self.rows[row].clone();
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let scale = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &scale * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost · x` using only columns below `column_limit` as
    /// entering candidates. Bland's rule: lowest-index improving column,
    /// ratio ties broken by lowest basic variable index.
    fn optimize(&mut self, cost: &[Rational], column_limit: usize) -> PhaseEnd {
        loop {
            let mut entering = None;
            for j in 0..column_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !cost[b].is_zero() && !row[j].is_zero() {
                        reduced -= &cost[b] * &row[j];
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.columns] / &row[col];
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return PhaseEnd::Unbounded,
            }
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &cost[b] * &row[self.columns])
            .sum()
    }

    /// Phase one. Returns false when the constraints are infeasible;
    /// otherwise leaves a feasible basis free of artificial variables
    /// (redundant rows are dropped).
    fn find_feasible_basis(&mut self) -> bool {
        if self.first_artificial == self.columns {
            return true;
        }
        let mut cost = vec![zero(); self.columns];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = -one();
        }
        // Phase one is bounded above by zero, so it always ends optimal.
        let _ = self.optimize(&cost, self.columns);
        if self.objective_value(&cost).is_negative() {
            return false;
        }
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![zero(); self.originals];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.originals {
                x[b] = row[self.columns].clone();
            }
        }
        x
    }
}

fn verify(constraints: &[Constraint], x: &[Rational]) -> Result<()> {
    if x.iter().any(Signed::is_negative) || !constraints.iter().all(|c| c.is_satisfied_by(x)) {
        return Err(Error::LpVerificationFailed);
    }
    Ok(())
}

/// Solves `lp` exactly. An `Optimal` witness is re-checked against every
/// constraint before it is returned.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpResult> {
    lp.validate()?;
    let n = lp.variable_count();
    let mut tableau = Tableau::build(n, &lp.constraints);
    if !tableau.find_feasible_basis() {
        return Ok(LpResult::Infeasible);
    }
    let mut cost = lp.objective.clone();
    cost.resize(tableau.columns, zero());
    match tableau.optimize(&cost, tableau.first_artificial) {
        PhaseEnd::Unbounded => Ok(LpResult::Unbounded),
        PhaseEnd::Optimal => {
            let witness = tableau.solution();
            verify(&lp.constraints, &witness)?;
            let value: Rational = lp.objective.iter().zip(&witness).map(|(c, x)| c * x).sum();
            debug_assert_eq!(value, tableau.objective_value(&cost));
            Ok(LpResult::Optimal { value, witness })
        }
    }
}

/// Phase-one feasibility of `constraints` over `x ≥ 0` with
/// `variables` columns. Returns a verified witness when feasible.
pub fn lp_feasible(variables: usize, constraints: &[Constraint]) -> Result<Option<Vec<Rational>>> {
    check_widths(variables, constraints)?;
    let mut tableau = Tableau::build(variables, constraints);
    if !tableau.find_feasible_basis() {
        return Ok(None);
    }
    let witness = tableau.solution();
    verify(constraints, &witness)?;
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn row(values: &[i64], sense: Sense, rhs: i64) -> Constraint {
        Constraint::new(values.iter().map(|&v| int(v)).collect(), sense, int(rhs))
    }

    #[test]
    fn single_tight_constraint() {
        let lp = LinearProgram::new(vec![int(1)], vec![row(&[1], Sense::Le, 1)]);
        assert_eq!(lp_solve(&lp).unwrap(), LpResult::Optimal { value: int(1), witness: vec![int(1)] });
    }

    #[test]
    fn contradicts_nonnegativity() {
        let lp = LinearProgram::new(vec![int(1)], vec![row(&[1], Sense::Le, -1)]);
        assert_eq!(lp_solve(&lp).unwrap(), LpResult::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let lp = LinearProgram::new(vec![int(1), int(0)], vec![row(&[1, -1], Sense::Le, 1)]);
        assert_eq!(lp_solve(&lp).unwrap(), LpResult::Unbounded);
    }

    /// max ε with ε = e⁺ − e⁻ over the U/D/M dominance system. The
    /// one-variable oracle max_p min(3p, 3(1−p)) − 1 gives 1/2 at p = 1/2.
    #[test]
    fn mixed_dominance_program() {
        let constraints = vec![
            row(&[3, 0, 1, -1, 1], Sense::Ge, 1),
            row(&[0, 3, 1, -1, 1], Sense::Ge, 1),
            row(&[1, 1, 1, 0, 0], Sense::Eq, 1),
        ];
        let lp = LinearProgram::new(vec![int(0), int(0), int(0), int(1), int(-1)], constraints);
        let result = lp_solve(&lp).unwrap();
        assert_eq!(result.value(), Some(&ratio(1, 2)));
        let w = result.witness().unwrap();
        assert_eq!(&w[..3], &[ratio(1, 2), ratio(1, 2), int(0)]);
        assert_eq!(&w[3] - &w[4], ratio(1, 2));

        // grid scan of the same one-variable function never beats 1/2
        let oracle = (0..=100)
            .map(|k| ratio(k, 100))
            .map(|p| std::cmp::min(int(3) * &p, int(3) * (int(1) - &p)) - int(1))
            .max()
            .unwrap();
        assert_eq!(oracle, ratio(1, 2));
    }

    #[test]
    fn feasibility() {
        let w = lp_feasible(2, &[row(&[1, 1], Sense::Eq, 1)]).unwrap().unwrap();
        assert_eq!(&w[0] + &w[1], int(1));
        assert_eq!(lp_feasible(1, &[row(&[1], Sense::Eq, 1), row(&[1], Sense::Eq, 2)]).unwrap(), None);
    }

    /// Is there μ ∈ Δ{L,R} making M a best response in the U/D/M game?
    /// Rows: μ·(u_M − u_U) ≥ 0, μ·(u_M − u_D) ≥ 0, Σμ = 1.
    #[test]
    fn correlated_belief_for_dominated_strategy_is_infeasible() {
        let constraints = vec![
            row(&[1 - 3, 1], Sense::Ge, 0),
            row(&[1, 1 - 3], Sense::Ge, 0),
            row(&[1, 1], Sense::Eq, 1),
        ];
        assert_eq!(lp_feasible(2, &constraints).unwrap(), None);
        // scan oracle: M's payoff 1 is always below max(3μ_L, 3μ_R)
        for k in 0..=100 {
            let l = ratio(k, 100);
            let r = int(1) - &l;
            assert!(int(1) < std::cmp::max(int(3) * &l, int(3) * &r));
        }
        assert!(int(1) < int(3) * ratio(1, 2));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let constraints = vec![row(&[1, 1], Sense::Eq, 2), row(&[2, 2], Sense::Eq, 4)];
        let lp = LinearProgram::new(vec![int(1), int(2)], constraints);
        assert_eq!(lp_solve(&lp).unwrap().value(), Some(&int(4)));
    }

    #[test]
    fn dimension_mismatch() {
        let lp = LinearProgram::new(vec![int(1)], vec![row(&[1, 1], Sense::Le, 1)]);
        assert!(matches!(lp_solve(&lp), Err(Error::DimensionMismatch(_))));
        assert!(matches!(lp_feasible(3, &[row(&[1], Sense::Le, 1)]), Err(Error::DimensionMismatch(_))));
    }
}
