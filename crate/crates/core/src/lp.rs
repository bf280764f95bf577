//! Exact linear feasibility and optimisation over the rationals.
//!
//! A dense two-phase simplex with Bland's anti-cycling rule. Free variables
//! are split as `x = x⁺ - x⁻`. Strict inequalities `a·x < b` are handled by a
//! shared margin variable `t ∈ [0, 1]` entering every strict row as
//! `a·x + t ≤ b`; the strict system is feasible iff the maximal margin is
//! positive. Everything is deterministic: same input, same pivots, same
//! witness.

use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `coeffs · x  rel  rhs`
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rhs: Rational,
    pub rel: Relation,
}

impl Constraint {
    pub fn new(coeffs: Vector, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rhs, rel }
    }
    pub fn le(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }
    pub fn lt(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Lt, rhs)
    }
    pub fn eq(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// Exact check of the constraint at `x`.
    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = crate::arith::dot(&self.coeffs, x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Lt => lhs < self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vector, value: Rational },
}

/// Decides feasibility of a mixed strict / non-strict / equality system in
/// `n` free variables and returns an exact witness.
pub fn feasible(n: usize, constraints: &[Constraint]) -> Option<Vector> {
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint width does not match variable count");
    }
    let has_strict = constraints.iter().any(|c| c.rel == Relation::Lt);
    if !has_strict {
        return match solve(n, constraints, None, false) {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
        };
    }
    match solve(n, constraints, None, true) {
        LpOutcome::Optimal { point, value } if value.is_positive() => Some(point),
        _ => None,
    }
}

/// Maximises `objective · x` subject to non-strict constraints. Strict rows
/// are treated as non-strict here.
pub fn maximize(n: usize, objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    assert_eq!(objective.len(), n);
    solve(n, constraints, Some(objective), false)
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs for the current (maximisation) objective.
    cost: Vec<Rational>,
    value: Rational,
    banned: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for v in self.a[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.b[row] *= &inv;
        let prow = self.a[row].clone();
        let prhs = self.b[row].clone();
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for (x, y) in self.a[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.b[i] -= &f * &prhs;
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, y) in self.cost.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[row] = col;
    }

    fn run(&mut self) -> Step {
        loop {
            // Bland: lowest index with positive reduced cost enters.
            let Some(col) = (0..self.cost.len())
                .find(|&j| !self.banned[j] && self.cost[j].is_positive())
            else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Step::Unbounded,
            }
        }
    }

    fn set_objective(&mut self, c: &[Rational]) {
        self.cost = c.to_vec();
        self.value = Rational::zero();
        for (i, &bcol) in self.basis.iter().enumerate() {
            let cb = c[bcol].clone();
            if cb.is_zero() {
                continue;
            }
            for (x, y) in self.cost.iter_mut().zip(&self.a[i]) {
                *x -= &cb * y;
            }
            self.value += &cb * &self.b[i];
        }
    }

    fn column_values(&self, ncols: usize) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); ncols];
        for (i, &bcol) in self.basis.iter().enumerate() {
            z[bcol] = self.b[i].clone();
        }
        z
    }
}

/// Core routine. With `margin`, adds the strict-margin variable and
/// maximises it (ignoring `objective`).
fn solve(
    n: usize,
    constraints: &[Constraint],
    objective: Option<&[Rational]>,
    margin: bool,
) -> LpOutcome {
    // Column layout: x⁺ [0,n), x⁻ [n,2n), t (optional), slacks, artificials.
    let t_col = 2 * n;
    let first_slack = if margin { 2 * n + 1 } else { 2 * n };
    let mut rows: Vec<(Vec<(usize, Rational)>, Rational)> = Vec::new();
    let mut slack_count = 0usize;
    for c in constraints {
        let mut entries = Vec::new();
        for (j, v) in c.coeffs.iter().enumerate() {
            if !v.is_zero() {
                entries.push((j, v.clone()));
                entries.push((n + j, -v.clone()));
            }
        }
        match c.rel {
            Relation::Eq => {}
            Relation::Le => {
                entries.push((first_slack + slack_count, Rational::one()));
                slack_count += 1;
            }
            Relation::Lt => {
                if margin {
                    entries.push((t_col, Rational::one()));
                }
                entries.push((first_slack + slack_count, Rational::one()));
                slack_count += 1;
            }
        }
        rows.push((entries, c.rhs.clone()));
    }
    if margin {
        rows.push((
            vec![(t_col, Rational::one()), (first_slack + slack_count, Rational::one())],
            Rational::one(),
        ));
        slack_count += 1;
    }
    let first_art = first_slack + slack_count;
    let m = rows.len();
    let ncols = first_art + m;

    let mut a = vec![vec![Rational::zero(); ncols]; m];
    let mut b = vec![Rational::zero(); m];
    for (i, (entries, rhs)) in rows.into_iter().enumerate() {
        let flip = rhs.is_negative();
        for (j, v) in entries {
            a[i][j] = if flip { -v } else { v };
        }
        b[i] = if flip { -rhs } else { rhs };
        a[i][first_art + i] = Rational::one();
    }
    let mut tab = Tableau {
        a,
        b,
        basis: (first_art..first_art + m).collect(),
        cost: Vec::new(),
        value: Rational::zero(),
        banned: vec![false; ncols],
    };

    // Phase 1: maximise -(sum of artificials).
    let mut c1 = vec![Rational::zero(); ncols];
    for c in c1.iter_mut().skip(first_art) {
        *c = -Rational::one();
    }
    tab.set_objective(&c1);
    if let Step::Unbounded = tab.run() {
        unreachable!("phase one objective is bounded above by zero");
    }
    if tab.value.is_negative() {
        return LpOutcome::Infeasible;
    }
    // Drive degenerate artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] >= first_art {
            if let Some(col) = (0..first_art).find(|&j| !tab.a[i][j].is_zero()) {
                tab.pivot(i, col);
            }
        }
    }
    for j in first_art..ncols {
        tab.banned[j] = true;
    }

    // Phase 2.
    let mut c2 = vec![Rational::zero(); ncols];
    if margin {
        c2[t_col] = Rational::one();
    } else if let Some(obj) = objective {
        for (j, v) in obj.iter().enumerate() {
            c2[j] = v.clone();
            c2[n + j] = -v.clone();
        }
    }
    tab.set_objective(&c2);
    if let Step::Unbounded = tab.run() {
        return LpOutcome::Unbounded;
    }
    let z = tab.column_values(ncols);
    let point: Vector = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    let value = if margin { z[t_col].clone() } else { tab.value.clone() };
    LpOutcome::Optimal { point, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, vector};

    #[test]
    fn open_quadrant_is_feasible() {
        let cs = [
            Constraint::lt(vector(&[-1, 0]), int(0)),
            Constraint::lt(vector(&[0, -1]), int(0)),
        ];
        let w = feasible(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds(&w)));
    }

    #[test]
    fn opposite_strict_is_infeasible() {
        let cs = [
            Constraint::lt(vector(&[-1]), int(0)),
            Constraint::lt(vector(&[1]), int(0)),
        ];
        assert!(feasible(1, &cs).is_none());
    }

    #[test]
    fn equality_with_strict() {
        let cs = [
            Constraint::eq(vector(&[1, 0]), int(0)),
            Constraint::lt(vector(&[0, -1]), int(0)),
        ];
        let w = feasible(2, &cs).unwrap();
        assert_eq!(w[0], int(0));
        assert!(w[1] > int(0));
    }

    #[test]
    fn closed_but_not_open() {
        // x <= 0 and x >= 0 is feasible; x < 0, x >= 0 is not.
        let closed = [
            Constraint::le(vector(&[1]), int(0)),
            Constraint::le(vector(&[-1]), int(0)),
        ];
        assert_eq!(feasible(1, &closed).unwrap(), vector(&[0]));
        let open = [
            Constraint::lt(vector(&[1]), int(0)),
            Constraint::le(vector(&[-1]), int(0)),
        ];
        assert!(feasible(1, &open).is_none());
    }

    #[test]
    fn negative_rhs_rows() {
        // x >= 3, x <= 5 with x free.
        let cs = [
            Constraint::le(vector(&[-1]), int(-3)),
            Constraint::lt(vector(&[1]), int(5)),
        ];
        let w = feasible(1, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds(&w)));
    }

    #[test]
    fn maximize_bounded_and_unbounded() {
        let cs = [
            Constraint::le(vector(&[1, 1]), int(4)),
            Constraint::le(vector(&[-1, 0]), int(0)),
            Constraint::le(vector(&[0, -1]), int(0)),
        ];
        match maximize(2, &vector(&[1, 2]), &cs) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(8)),
            other => panic!("{other:?}"),
        }
        assert_eq!(maximize(2, &vector(&[-1, 0]), &cs[..1]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let cs = [
            Constraint::eq(vector(&[1, 1]), int(1)),
            Constraint::eq(vector(&[2, 2]), int(2)),
            Constraint::lt(vector(&[-1, 0]), int(0)),
            Constraint::lt(vector(&[0, -1]), int(0)),
        ];
        let w = feasible(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds(&w)));
    }
}
