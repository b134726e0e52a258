//! Shared numerical kernel.

pub mod contour;
pub mod dd;
pub mod linalg;
pub mod mat2;
pub mod ode;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod series;

pub use contour::{ContourPath, Piece};
pub use linalg::{hankel_solve, hankel_solve_with, HankelSolution};
pub use mat2::ComplexMat2;
pub use ode::{transport, transport_from};
pub use poly::ComplexPoly;
pub use quad::{integrate_singular, GaussJacobi, QuadratureKind, QuadratureRule};
pub use scalar::Scalar;

use num_complex::Complex64 as C64;

/// Worker pool for the parallel scans, capped by `HEUNRH_THREADS` when set.
pub fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: std::sync::OnceLock<rayon::ThreadPool> = std::sync::OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var("HEUNRH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
    })
}

/// Shorthand constructor.
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Distance from z to the nearest integer (complex).
pub fn dist_to_integer(z: C64) -> f64 {
    C64::new(z.re - z.re.round(), z.im).norm()
}

/// Richardson extrapolation to h → 0 for samples at h₀·2^{-i}, assuming an
/// expansion in integer powers of h. Returns the table's last diagonal entry.
pub fn richardson<T>(samples: &[T]) -> T
where
    T: Copy + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    let mut t: Vec<T> = samples.to_vec();
    let n = t.len();
    for k in 1..n {
        let f = 2f64.powi(k as i32);
        for i in (k..n).rev() {
            t[i] = t[i] + (t[i] - t[i - 1]) * (1.0 / (f - 1.0));
        }
    }
    t[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_kills_low_orders() {
        let f = |h: f64| 2.0 + 3.0 * h - h * h + 0.5 * h * h * h;
        let s: Vec<f64> = (0..4).map(|i| f(0.1 / 2f64.powi(i))).collect();
        assert!((richardson(&s) - 2.0).abs() < 1e-14);
    }
}
