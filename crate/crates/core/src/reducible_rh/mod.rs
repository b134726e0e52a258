//! Riemann–Hilbert problem with upper-triangular monodromy.
//!
//! With α₁+α₂+α₃+δ = −n the solution is Φ = R_n(λ)(I + φ(λ)σ₊), where φ is
//! the Cauchy transform of the weight g on (λ₁,λ₂)∪(λ₂,λ₃) and R_n is built
//! from the Hankel matrices of the moments φ_k. The (1,1) entry π_n is a
//! generalized Jacobi polynomial; where Δ_{n+1} = 0 it solves a Heun equation.

mod branch;
mod hankel;
mod locus;
mod moments;

pub use branch::{f_log, f_plus_minus, weight};
pub use hankel::{
    build_heun_polynomial, classical_pvi_y, classical_pvi_y_printed, classical_pvi_y_via_expansion,
    expansion_at_infinity, orthogonality_residuals, part_dets, solve_rn, solve_rn_with, AsymptoticData, RHSolution,
};
pub use locus::{
    heun_locus, heun_locus_ratio, heun_polynomial_residual, locate_roots, residual_points, scan_hankel_det, LocusReport, LocusRoot, SearchRegion,
    ROOT_CERT_TOL, RESIDUAL_CERT_TOL,
};
pub use moments::{f_coefficients, moments, moments_with, MomentTable};

use crate::error::{HeunError, Result};
use crate::monodromy::{check_exponent_sum, reducible_s2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const TWO_PI_I: C64 = C64 { re: 0.0, im: 2.0 * PI };

/// Reducible monodromy data on the poles (0, a, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducibleData {
    pub alpha: [C64; 3],
    pub delta: C64,
    pub n: usize,
    /// s₁, s₂, s₃; s₂ is fixed by the cyclic relation.
    pub s: [C64; 3],
    pub a: C64,
}

fn check_position(a: C64) -> Result<()> {
    if !(a.re.is_finite() && a.im.is_finite()) {
        return Err(HeunError::InvalidParameters(format!("position a = {a}")));
    }
    if a.norm() < 1e-12 || (a - 1.0).norm() < 1e-12 {
        return Err(HeunError::OnCutEndpoint(format!("a = {a} coincides with 0 or 1")));
    }
    // The broken line 0 → a → 1 → ∞ folds onto itself for real a outside (0,1).
    if a.im == 0.0 && !(a.re > 0.0 && a.re < 1.0) {
        return Err(HeunError::BadGeometry(format!("real a = {} outside (0,1)", a.re)));
    }
    Ok(())
}

impl ReducibleData {
    /// δ = −n − Σα and s₂ from the cyclic relation.
    pub fn new(alpha: [C64; 3], n: usize, a: C64, s1: C64, s3: C64) -> Result<Self> {
        for (j, al) in alpha.iter().enumerate() {
            if !(al.re >= 0.0 && al.re < 0.5) || !al.im.is_finite() {
                return Err(HeunError::ResonantAlpha(format!("Re alpha_{} = {} outside [0, 1/2)", j + 1, al.re)));
            }
        }
        check_position(a)?;
        let delta = -(alpha[0] + alpha[1] + alpha[2]) - n as f64;
        check_exponent_sum(alpha, delta, n)?;
        let s2 = reducible_s2(alpha, delta, s1, s3);
        Ok(ReducibleData { alpha, delta, n, s: [s1, s2, s3], a })
    }

    pub fn with_position(&self, a: C64) -> Result<Self> {
        Self::new(self.alpha, self.n, a, self.s[0], self.s[2])
    }

    pub fn with_s3(&self, s3: C64) -> Result<Self> {
        Self::new(self.alpha, self.n, self.a, self.s[0], s3)
    }

    pub fn lambdas(&self) -> [C64; 3] {
        [C64::default(), self.a, C64::new(1.0, 0.0)]
    }

    /// |s₁e^{−2πiα₂} + s₂e^{2πiα₁} + s₃e^{−2πiδ}|, zero by construction.
    pub fn cyclic_phase_residual(&self) -> f64 {
        let [s1, s2, s3] = self.s;
        (s1 * (-TWO_PI_I * self.alpha[1]).exp()
            + s2 * (TWO_PI_I * self.alpha[0]).exp()
            + s3 * (-TWO_PI_I * self.delta).exp())
        .norm()
    }

    /// Jump coefficients (s₁, −s₃e^{2πiδ}) on the two segments.
    pub fn segment_coefficients(&self) -> [C64; 2] {
        [self.s[0], -self.s[2] * (TWO_PI_I * self.delta).exp()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    #[test]
    fn data_validation() {
        let q = [c(0.25); 3];
        let rd = ReducibleData::new(q, 0, c(0.5), c(1.0), c(1.0)).unwrap();
        assert!((rd.delta - c(-0.75)).norm() < 1e-15);
        assert!(rd.cyclic_phase_residual() < 1e-14);
        assert!((rd.s[1] - c(2.0)).norm() < 1e-13, "{}", rd.s[1]);
        assert!(matches!(
            ReducibleData::new([c(0.5), c(0.1), c(0.1)], 0, c(0.5), c(1.0), c(1.0)),
            Err(HeunError::ResonantAlpha(_))
        ));
        assert!(matches!(ReducibleData::new(q, 0, c(1.5), c(1.0), c(1.0)), Err(HeunError::BadGeometry(_))));
        assert!(matches!(ReducibleData::new(q, 0, c(1.0), c(1.0), c(1.0)), Err(HeunError::OnCutEndpoint(_))));
        assert!(ReducibleData::new(q, 2, C64::new(1.5, 0.3), c(1.0), c(1.0)).is_ok());
    }
}
