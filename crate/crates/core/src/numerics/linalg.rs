//! Pivoted complex linear solves for Hankel systems.

use crate::error::{HeunError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

pub const DEFAULT_RCOND: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct HankelSolution {
    pub x: DVector<C64>,
    pub det: C64,
    pub rcond: f64,
}

fn norm1(m: &DMatrix<C64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Determinant and reciprocal 1-norm condition number of a square matrix.
pub fn det_rcond(h: &DMatrix<C64>) -> (C64, f64, Option<DMatrix<C64>>) {
    let lu = h.clone().lu();
    let det = lu.determinant();
    match lu.try_inverse() {
        Some(inv) => {
            let r = 1.0 / (norm1(h) * norm1(&inv));
            (det, if r.is_finite() { r } else { 0.0 }, Some(inv))
        }
        None => (det, 0.0, None),
    }
}

/// Solves Hx = b by LU with partial pivoting; refuses when rcond < `rcond_cut`.
pub fn hankel_solve_with(h: &DMatrix<C64>, b: &DVector<C64>, rcond_cut: f64) -> Result<HankelSolution> {
    let n = h.nrows();
    if n == 0 || h.ncols() != n || b.len() != n {
        return Err(HeunError::InvalidParameters(format!(
            "hankel_solve needs a square system, got {}x{} with rhs {}",
            h.nrows(),
            h.ncols(),
            b.len()
        )));
    }
    let (det, rcond, _) = det_rcond(h);
    if rcond < rcond_cut {
        return Err(HeunError::IllConditioned(rcond));
    }
    let x = h
        .clone()
        .lu()
        .solve(b)
        .ok_or(HeunError::IllConditioned(0.0))?;
    Ok(HankelSolution { x, det, rcond })
}

pub fn hankel_solve(h: &DMatrix<C64>, b: &DVector<C64>) -> Result<HankelSolution> {
    hankel_solve_with(h, b, DEFAULT_RCOND)
}

/// Hankel matrix {v[i+j+offset]}, i,j < n, from a 0-based sequence.
pub fn hankel_from(v: &[C64], n: usize, offset: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| v[i + j + offset])
}
