//! Adaptive Runge–Kutta–Fehlberg 7(8) with complex state, and transport of
//! fundamental solutions of Ψ′ = A(λ)Ψ along contour paths.

use super::contour::{ContourPath, Piece};
use super::mat2::ComplexMat2;
use crate::error::{HeunError, Result};
use num_complex::Complex64 as C64;

const STAGES: usize = 13;

const C: [f64; STAGES] = [
    0.0,
    2.0 / 27.0,
    1.0 / 9.0,
    1.0 / 6.0,
    5.0 / 12.0,
    0.5,
    5.0 / 6.0,
    1.0 / 6.0,
    2.0 / 3.0,
    1.0 / 3.0,
    1.0,
    0.0,
    1.0,
];

const A: [[f64; 12]; STAGES] = [
    [0.0; 12],
    [2.0 / 27.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 36.0, 1.0 / 12.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 24.0, 0.0, 1.0 / 8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0, 0.0, 0.0, 0.0, 0.0],
    [-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0, -19.0 / 60.0, 17.0 / 6.0, -1.0 / 12.0, 0.0, 0.0, 0.0],
    [2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0, 2133.0 / 4100.0, 45.0 / 82.0, 45.0 / 164.0, 18.0 / 41.0, 0.0, 0.0],
    [3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0, 3.0 / 41.0, 6.0 / 41.0, 0.0, 0.0],
    [-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -289.0 / 82.0, 2193.0 / 4100.0, 51.0 / 82.0, 33.0 / 164.0, 12.0 / 41.0, 0.0, 1.0],
];

/// Eighth-order weights (propagated solution).
const B8: [f64; STAGES] = [
    0.0, 0.0, 0.0, 0.0, 0.0, 34.0 / 105.0, 9.0 / 35.0, 9.0 / 35.0, 9.0 / 280.0, 9.0 / 280.0, 0.0, 41.0 / 840.0, 41.0 / 840.0,
];

const ERR_W: f64 = 41.0 / 840.0;

pub const MIN_STEP: f64 = 1e-14;

/// State vector for the integrator.
pub trait OdeState: Copy {
    fn zero_like(&self) -> Self;
    fn axpy(&self, a: f64, x: &Self) -> Self;
    fn norm(&self) -> f64;
}

impl OdeState for ComplexMat2 {
    fn zero_like(&self) -> Self {
        ComplexMat2::zero()
    }
    fn axpy(&self, a: f64, x: &Self) -> Self {
        *self + x.scale_re(a)
    }
    fn norm(&self) -> f64 {
        self.max_abs()
    }
}

impl<const N: usize> OdeState for [C64; N] {
    fn zero_like(&self) -> Self {
        [C64::new(0.0, 0.0); N]
    }
    fn axpy(&self, a: f64, x: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            out[i] += x[i] * a;
        }
        out
    }
    fn norm(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates y′ = f(s, y) from s0 to s1 (real parameter) with mixed
/// absolute/relative local error control `tol`.
pub fn rkf78<T: OdeState, F: FnMut(f64, &T) -> T>(
    mut f: F,
    s0: f64,
    s1: f64,
    y0: T,
    tol: f64,
) -> Result<(T, IntegrationStats)> {
    let span = s1 - s0;
    if span == 0.0 {
        return Ok((y0, IntegrationStats { accepted: 0, rejected: 0 }));
    }
    let dir = span.signum();
    let mut s = s0;
    let mut y = y0;
    let mut h = span.abs() / 16.0;
    let mut stats = IntegrationStats { accepted: 0, rejected: 0 };
    let mut k: [T; STAGES] = [y0.zero_like(); STAGES];
    while (s1 - s) * dir > 0.0 {
        if h > (s1 - s).abs() {
            h = (s1 - s).abs();
        }
        let hs = h * dir;
        for i in 0..STAGES {
            let mut yi = y;
            for j in 0..i {
                if A[i][j] != 0.0 {
                    yi = yi.axpy(hs * A[i][j], &k[j]);
                }
            }
            k[i] = f(s + C[i] * hs, &yi);
        }
        let err_vec = k[0].axpy(1.0, &k[10]).axpy(-1.0, &k[11]).axpy(-1.0, &k[12]);
        let err = (err_vec.norm() * ERR_W * h) / (1.0 + y.norm());
        if !err.is_finite() {
            return Err(HeunError::SingularityHit(format!("non-finite derivative near s = {s}")));
        }
        if err <= tol {
            let mut ynew = y;
            for i in 0..STAGES {
                if B8[i] != 0.0 {
                    ynew = ynew.axpy(hs * B8[i], &k[i]);
                }
            }
            y = ynew;
            s += hs;
            stats.accepted += 1;
        } else {
            stats.rejected += 1;
        }
        let factor = if err == 0.0 { 4.0 } else { (0.9 * (tol / err).powf(1.0 / 8.0)).clamp(0.2, 4.0) };
        h *= factor;
        if h < MIN_STEP * span.abs().max(1.0) && (s1 - s).abs() > MIN_STEP {
            return Err(HeunError::StepUnderflow(s));
        }
    }
    Ok((y, stats))
}

/// Transfer matrix T with Ψ(end) = T·Ψ(start) for Ψ′ = A(λ)Ψ along `path`.
pub fn transport<F: Fn(C64) -> ComplexMat2>(a: F, path: &ContourPath, tol: f64) -> Result<ComplexMat2> {
    transport_from(a, path, ComplexMat2::identity(), tol)
}

/// Continues the solution with initial value `y0` along `path`.
pub fn transport_from<F: Fn(C64) -> ComplexMat2>(a: F, path: &ContourPath, y0: ComplexMat2, tol: f64) -> Result<ComplexMat2> {
    path.validate()?;
    let mut y = y0;
    for piece in &path.pieces {
        y = transport_piece(&a, piece, y, tol)?;
    }
    Ok(y)
}

fn transport_piece<F: Fn(C64) -> ComplexMat2>(a: &F, piece: &Piece, y0: ComplexMat2, tol: f64) -> Result<ComplexMat2> {
    let rhs = |s: f64, y: &ComplexMat2| a(piece.point(s)) * piece.tangent(s) * *y;
    let (y, _) = rkf78(rhs, 0.0, 1.0, y0, tol)?;
    Ok(y)
}
