//! Small dense simplex over exact rationals.
//!
//! Solves `max c·x  s.t.  A x <= b, x >= 0` with `b >= 0`, so the slack basis
//! is feasible and no phase-one is needed. Bland's rule guarantees
//! termination. Sized for the clause-feasibility programs used by the XOS
//! membership check (a handful of variables, at most a few dozen rows).

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// `max objective · x  s.t.  row · x <= rhs  for each constraint, x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub constraints: Vec<(Vec<Rat>, Rat)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, solution: Vec<Rat> },
    Unbounded,
}

pub fn maximize(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    for (row, rhs) in &lp.constraints {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} coefficients"),
                got: format!("{}", row.len()),
            });
        }
        if rhs.is_negative() {
            return Err(Error::InvalidInput(
                "rhs must be nonnegative (slack basis must be feasible)".into(),
            ));
        }
    }

    // Tableau: m rows of [coeffs for n structural + m slack vars | rhs],
    // plus an objective row holding reduced costs and the negated value.
    let total = n + m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, (row, rhs)) in lp.constraints.iter().enumerate() {
        let mut r: Vec<Rat> = Vec::with_capacity(total + 1);
        r.extend(row.iter().cloned());
        for k in 0..m {
            r.push(if k == i {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            });
        }
        r.push(rhs.clone());
        tab.push(r);
    }
    let mut obj: Vec<Rat> = Vec::with_capacity(total + 1);
    obj.extend(lp.objective.iter().cloned());
    obj.extend(std::iter::repeat_n(Rat::zero(), m + 1));
    tab.push(obj);

    let mut basis: Vec<usize> = (n..total).collect();

    // Bland: entering variable = lowest index with positive reduced cost.
    while let Some(entering) = (0..total).find(|&j| tab[m][j].is_positive()) {
        // Ratio test; Bland ties broken by lowest basis variable index.
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio: Option<Rat> = None;
        for i in 0..m {
            if tab[i][entering].is_positive() {
                let ratio = &tab[i][total] / &tab[i][entering];
                let better = match &best_ratio {
                    None => true,
                    Some(r) => {
                        ratio < *r
                            || (ratio == *r
                                && basis[i] < basis[pivot_row.expect("row set with ratio")])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    pivot_row = Some(i);
                }
            }
        }
        let Some(pr) = pivot_row else {
            return Ok(LpOutcome::Unbounded);
        };

        // Pivot.
        let pivot = tab[pr][entering].clone();
        for x in tab[pr].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pr || row[entering].is_zero() {
                continue;
            }
            let factor = row[entering].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &factor * p;
            }
        }
        basis[pr] = entering;
    }

    let mut solution = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            solution[basis[i]] = tab[i][total].clone();
        }
    }
    let value = -tab[m][total].clone();
    Ok(LpOutcome::Optimal { value, solution })
}
