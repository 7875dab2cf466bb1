//! Dense two-phase simplex for small standard-form programs
//! `min c.x  s.t.  A x = b, x >= 0`.
//!
//! Works over any [`Field`]: exact over rationals, tolerance-based over `f64`.
//! Bland's rule picks both the entering and the leaving variable, so the
//! method terminates on degenerate programs.

use thiserror::Error;

use crate::scalar::{Field, Tolerance};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    pub objective: Vec<F>,
    pub constraints: Vec<Vec<F>>,
    pub rhs: Vec<F>,
}

#[derive(Debug, Clone)]
pub struct LpSolution<F> {
    pub value: F,
    pub x: Vec<F>,
    /// Dual solution `y` with `A^T y <= c` and `b.y = value` at optimality.
    pub dual: Vec<F>,
    pub basis: Vec<usize>,
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    cost: Vec<F>,
    basis: Vec<usize>,
    width: usize,
}

impl<F: Field> Tableau<F> {
    fn rhs(&self, i: usize) -> &F {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * pv.clone();
            }
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for (x, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * pv.clone();
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations with entering columns restricted to `< allowed`.
    fn optimize(&mut self, allowed: usize, tol: &Tolerance) -> Result<(), LpError> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_neg(tol)) else {
                return Ok(());
            };
            let mut best: Option<(usize, F)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_pos(tol) {
                    continue;
                }
                let ratio = self.rhs(i).clone() / a.clone();
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => match ratio.cmp_tol(&br, tol) {
                        std::cmp::Ordering::Less => Some((i, ratio)),
                        std::cmp::Ordering::Equal if self.basis[i] < self.basis[bi] => {
                            Some((i, ratio))
                        }
                        _ => Some((bi, br)),
                    },
                };
            }
            let (r, _) = best.ok_or(LpError::Unbounded)?;
            self.pivot(r, c);
        }
    }
}

pub fn solve_lp<F: Field>(lp: &LinearProgram<F>, tol: &Tolerance) -> Result<LpSolution<F>, LpError> {
    let n = lp.objective.len();
    let m = lp.rhs.len();
    assert_eq!(lp.constraints.len(), m);
    let width = n + m;
    let mut sign = vec![F::one(); m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(lp.constraints[i].len(), n);
        let flip = lp.rhs[i].is_neg(tol);
        if flip {
            sign[i] = -F::one();
        }
        let mut row: Vec<F> = lp.constraints[i]
            .iter()
            .map(|a| if flip { -a.clone() } else { a.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { F::one() } else { F::zero() }));
        row.push(if flip { -lp.rhs[i].clone() } else { lp.rhs[i].clone() });
        rows.push(row);
    }
    // phase one: minimise the sum of artificials
    let mut cost = vec![F::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[width] = cost[width].clone() - row[width].clone();
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (n..n + m).collect(),
        width,
    };
    t.optimize(n, tol)?;
    if t.cost[width].is_neg(tol) {
        return Err(LpError::Infeasible);
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero_tol(tol)) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // phase two
    let mut cost: Vec<F> = lp
        .objective
        .iter()
        .cloned()
        .chain(std::iter::repeat_n(F::zero(), m + 1))
        .collect();
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        let cb = lp.objective[b].clone();
        if cb.is_zero() {
            continue;
        }
        for (x, a) in cost.iter_mut().zip(row) {
            *x = x.clone() - cb.clone() * a.clone();
        }
    }
    t.cost = cost;
    t.optimize(n, tol)?;

    let mut x = vec![F::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        x[b] = t.rhs(i).clone();
    }
    let value = -t.cost[width].clone();
    let dual = (0..m)
        .map(|k| -(t.cost[n + k].clone()) * sign[k].clone())
        .collect();
    Ok(LpSolution {
        value,
        x,
        dual,
        basis: t.basis,
    })
}

/// Convex weights expressing `x` as a combination of `vertices`, if any.
pub fn hull_membership<F: Field>(vertices: &[Vec<F>], x: &[F], tol: &Tolerance) -> Option<Vec<F>> {
    let k = vertices.len();
    let mut constraints: Vec<Vec<F>> = (0..x.len())
        .map(|d| vertices.iter().map(|v| v[d].clone()).collect())
        .collect();
    constraints.push(vec![F::one(); k]);
    let mut rhs = x.to_vec();
    rhs.push(F::one());
    let lp = LinearProgram {
        objective: vec![F::zero(); k],
        constraints,
        rhs,
    };
    solve_lp(&lp, tol).ok().map(|s| s.x)
}
