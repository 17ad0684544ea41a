//! Exact linear solving over the rationals.

use num_traits::Zero;

use crate::error::FitError;
use crate::rational::{self, Rational};

/// Solves the (possibly overdetermined) system `rows * x = rhs` exactly.
///
/// Fails with [`FitError::RankDeficient`] if the columns are dependent and
/// with [`FitError::InconsistentSamples`] if no exact solution exists.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, FitError> {
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let Some(p) = (pivot_row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < unknowns {
        return Err(FitError::RankDeficient { rank: pivots.len(), unknowns });
    }
    if let Some(row) = a[pivot_row..].iter().find(|row| !row[unknowns].is_zero()) {
        return Err(FitError::InconsistentSamples(format!(
            "residual {}",
            rational::render(&row[unknowns])
        )));
    }
    Ok((0..unknowns).map(|i| a[i][unknowns].clone()).collect())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (col, pivot) in &reduced {
            if r[*col].is_zero() {
                continue;
            }
            let f = r[*col].clone();
            for (x, y) in r.iter_mut().zip(pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if let Some(col) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[col].recip();
            for x in r.iter_mut() {
                *x *= &inv;
            }
            reduced.push((col, r));
        }
    }
    reduced.len()
}
