//! Dense two-phase simplex with Bland's rule for equality-form feasibility
//! problems: find x >= 0 with A x = b.
//!
//! The solver is generic over the scalar so the same pivoting runs in f64
//! (with a feasibility tolerance) and in exact rational arithmetic (tolerance
//! zero) for dyadic inputs.

// Tableau arithmetic reads clearest with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("simplex did not converge within {0} pivots")]
    PivotLimit(usize),
    #[error("dimension mismatch between constraint matrix and right-hand side")]
    BadShape,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility<T> {
    Feasible(Vec<T>),
    Infeasible,
}

pub trait Scalar:
    Clone
    + PartialOrd
    + Zero
    + One
    + Signed
    + std::ops::Div<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Add<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialOrd
        + Zero
        + One
        + Signed
        + std::ops::Div<Output = T>
        + std::ops::Mul<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
{
}

/// Phase-1 feasibility for A x = b, x >= 0. `eps` is the pivoting and
/// feasibility tolerance (exactly zero for rational arithmetic). Phase 2 is
/// trivial here: the objective of the membership problem is constant, so a
/// feasible basic point is returned as soon as the artificials are priced
/// out.
pub fn feasible_point<T: Scalar>(
    a: &[Vec<T>],
    b: &[T],
    eps: &T,
    max_pivots: usize,
) -> Result<Feasibility<T>, LpError> {
    let m = a.len();
    if b.len() != m {
        return Err(LpError::BadShape);
    }
    let n = if m == 0 { 0 } else { a[0].len() };
    if a.iter().any(|row| row.len() != n) {
        return Err(LpError::BadShape);
    }

    // Tableau: m rows of [structural columns | artificial columns | rhs],
    // plus the phase-1 objective row (cost 1 on each artificial).
    let width = n + m + 1;
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for r in 0..m {
        let mut row: Vec<T> = Vec::with_capacity(width);
        let flip = b[r] < T::zero();
        for c in 0..n {
            let v = a[r][c].clone();
            row.push(if flip { -v } else { v });
        }
        for c in 0..m {
            row.push(if c == r { T::one() } else { T::zero() });
        }
        row.push(if flip { -b[r].clone() } else { b[r].clone() });
        tab.push(row);
    }
    // Objective row: minimize the sum of artificials. Price out the initial
    // basis so reduced costs start consistent.
    let mut obj: Vec<T> = vec![T::zero(); width];
    for c in 0..n {
        let mut s = T::zero();
        for r in 0..m {
            s = s + tab[r][c].clone();
        }
        obj[c] = -s;
    }
    let mut rhs_sum = T::zero();
    for r in 0..m {
        rhs_sum = rhs_sum + tab[r][width - 1].clone();
    }
    obj[width - 1] = -rhs_sum;

    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let mut entering = None;
        for c in 0..n + m {
            if obj[c] < -eps.clone() {
                entering = Some(c);
                break;
            }
        }
        let Some(col) = entering else { break };

        // Ratio test, ties broken by the lowest basic variable index.
        let mut leaving: Option<(usize, T)> = None;
        for r in 0..m {
            if tab[r][col] > eps.clone() {
                let ratio = tab[r][width - 1].clone() / tab[r][col].clone();
                let better = match &leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((row, _)) = leaving else {
            // Unbounded phase-1 objective cannot happen (bounded below by 0);
            // hitting this means numerical trouble.
            return Err(LpError::PivotLimit(pivots));
        };

        pivot(&mut tab, &mut obj, row, col, width);
        basis[row] = col;
        pivots += 1;
        if pivots > max_pivots {
            return Err(LpError::PivotLimit(max_pivots));
        }
    }

    // Phase-1 optimum is -obj[rhs]; feasible iff it is (numerically) zero.
    let residual = -obj[width - 1].clone();
    if residual.abs() > eps.clone() + eps.clone() {
        return Ok(Feasibility::Infeasible);
    }

    let mut x = vec![T::zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab[r][width - 1].clone();
        }
    }
    Ok(Feasibility::Feasible(x))
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], obj: &mut [T], row: usize, col: usize, width: usize) {
    let piv = tab[row][col].clone();
    for c in 0..width {
        tab[row][c] = tab[row][c].clone() / piv.clone();
    }
    for r in 0..tab.len() {
        if r == row {
            continue;
        }
        let factor = tab[r][col].clone();
        if factor.is_zero() {
            continue;
        }
        for c in 0..width {
            tab[r][c] = tab[r][c].clone() - factor.clone() * tab[row][c].clone();
        }
    }
    let factor = obj[col].clone();
    if !factor.is_zero() {
        for c in 0..width {
            obj[c] = obj[c].clone() - factor.clone() * tab[row][c].clone();
        }
    }
}
