//! Exact feasibility of `A w >= 1` over the rationals.
//!
//! The system has few variables (one per vertex) and many rows (one per
//! edge), so the solver runs phase one of the simplex method on the Farkas
//! dual instead:
//!
//! ```text
//!   find y >= 0  with  yᵀA = 0,  Σ y = 1
//! ```
//!
//! That tableau has one row per variable of the original system. If phase
//! one reaches a zero objective, `y` proves the original system infeasible.
//! Otherwise the optimal simplex multipliers `π` satisfy `A π_V + π_0 <= 0`
//! with `π_0` equal to the positive optimum, and `w = -π_V / π_0` solves
//! the original system. Pivoting uses Bland's rule, so results are
//! deterministic and the method terminates.

use crate::rational::{one, zero, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A point with `A w >= 1` componentwise.
    Feasible(Vec<Rational>),
    /// `y >= 0`, `Σ y = 1`, `yᵀA = 0`.
    Infeasible(Vec<Rational>),
}

/// Decides `A w >= 1` for a dense `rows x vars` matrix.
pub fn solve_at_least_one(a: &[Vec<Rational>], vars: usize) -> Feasibility {
    let k = a.len();
    if k == 0 {
        return Feasibility::Feasible(vec![zero(); vars]);
    }
    debug_assert!(a.iter().all(|row| row.len() == vars));

    let m = vars + 1;
    let cols = k + m;
    // tableau rows: one per variable, then the normalization row
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for j in 0..vars {
        let mut row = vec![zero(); cols];
        for (i, arow) in a.iter().enumerate() {
            row[i] = arow[j].clone();
        }
        row[k + j] = one();
        t.push(row);
        rhs.push(zero());
    }
    let mut norm = vec![one(); k];
    norm.extend((0..m).map(|j| if j == vars { one() } else { zero() }));
    t.push(norm);
    rhs.push(one());

    let mut basis: Vec<usize> = (k..cols).collect();
    // reduced costs for the phase-one objective Σ artificials
    let mut reduced: Vec<Rational> = (0..cols)
        .map(|c| {
            if c >= k {
                zero()
            } else {
                -t.iter().map(|row| row[c].clone()).sum::<Rational>()
            }
        })
        .collect();
    let mut objective: Rational = rhs.iter().cloned().sum();

    loop {
        let Some(enter) = (0..cols).find(|&c| reduced[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &rhs[r] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded below cannot happen: the objective is a sum of
            // nonnegative variables
            unreachable!("phase-one objective is bounded below by zero");
        };
        pivot(&mut t, &mut rhs, &mut reduced, &mut objective, pr, enter);
        basis[pr] = enter;
    }

    if objective.is_zero() {
        let mut y = vec![zero(); k];
        for (r, &b) in basis.iter().enumerate() {
            if b < k {
                y[b] = rhs[r].clone();
            }
        }
        Feasibility::Infeasible(y)
    } else {
        // π_j = c_j - d_j on the artificial column of row j, with c_j = 1
        let pi: Vec<Rational> = (0..m).map(|j| one() - &reduced[k + j]).collect();
        let scale = pi[vars].clone();
        debug_assert_eq!(scale, objective);
        let w = pi[..vars].iter().map(|p| -p / &scale).collect();
        Feasibility::Feasible(w)
    }
}

fn pivot(
    t: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    reduced: &mut [Rational],
    objective: &mut Rational,
    pr: usize,
    pc: usize,
) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v = &*v / &p;
    }
    rhs[pr] = &rhs[pr] / &p;
    let pivot_row = t[pr].clone();
    let pivot_rhs = rhs[pr].clone();
    for r in 0..t.len() {
        if r == pr || t[r][pc].is_zero() {
            continue;
        }
        let f = t[r][pc].clone();
        for (v, pv) in t[r].iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        rhs[r] -= &f * &pivot_rhs;
    }
    if !reduced[pc].is_zero() {
        let f = reduced[pc].clone();
        for (v, pv) in reduced.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        // objective value = Σ c_B rhs; entering with negative reduced cost lowers it
        *objective += &f * &pivot_rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn matrix(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn check_feasible(a: &[Vec<Rational>], w: &[Rational]) {
        for row in a {
            let s: Rational = row.iter().zip(w).map(|(x, y)| x * y).sum();
            assert!(s >= one(), "row {row:?} gives {s}");
        }
    }

    fn check_farkas(a: &[Vec<Rational>], vars: usize, y: &[Rational]) {
        assert!(y.iter().all(|v| !v.is_negative()));
        assert_eq!(y.iter().cloned().sum::<Rational>(), one());
        for j in 0..vars {
            let s: Rational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn simple_feasible() {
        // w1 + w2 >= 1, -w1 >= 1
        let a = matrix(&[&[1, 1], &[-1, 0]]);
        match solve_at_least_one(&a, 2) {
            Feasibility::Feasible(w) => check_feasible(&a, &w),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn contradictory_rows() {
        // w1 + w2 >= 1 and -(w1 + w2) >= 1
        let a = matrix(&[&[1, 1], &[-1, -1]]);
        match solve_at_least_one(&a, 2) {
            Feasibility::Infeasible(y) => check_farkas(&a, 2, &y),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn grid_rows_are_infeasible() {
        // rows positive, columns negative on the 3x3 grid
        let mut a = Vec::new();
        for r in 0..3 {
            let mut row = vec![0; 9];
            for c in 0..3 {
                row[r * 3 + c] = 1;
            }
            a.push(row);
        }
        for c in 0..3 {
            let mut row = vec![0; 9];
            for r in 0..3 {
                row[r * 3 + c] = -1;
            }
            a.push(row);
        }
        let a: Vec<Vec<Rational>> = a
            .into_iter()
            .map(|r| r.into_iter().map(int).collect())
            .collect();
        match solve_at_least_one(&a, 9) {
            Feasibility::Infeasible(y) => check_farkas(&a, 9, &y),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn no_rows_is_feasible() {
        assert_eq!(
            solve_at_least_one(&[], 3),
            Feasibility::Feasible(vec![zero(), zero(), zero()])
        );
    }

    #[test]
    fn deterministic() {
        let a = matrix(&[&[1, 1, 0], &[0, -1, -1], &[-1, 0, 1], &[1, 0, 0]]);
        assert_eq!(solve_at_least_one(&a, 3), solve_at_least_one(&a, 3));
    }
}
