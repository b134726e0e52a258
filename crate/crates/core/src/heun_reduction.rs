//! Reduction of limit systems to the general Heun equation (GHE).
//!
//! A row entry ψ of a limit-system solution, multiplied by
//! λ^{e₁}(λ−a)^{e₂}(λ−1)^{e₃}, satisfies
//!
//! u″ + Σ(1−2α_j)/(λ−λ_j)·u′ + (μλ+ν)/(λ(λ−1)(λ−a))·u = 0.
//!
//! The regular variant uses the first row with e = α; hat and check use the
//! second row, with e = α and e = (α₁−½, α₂, α₃) respectively. The canonical
//! dialect writes the same equation with (αβλ − q), so q = −ν.

use crate::error::{HeunError, Result};
use crate::numerics::{transport_from, ComplexMat2, ComplexPoly, ContourPath, Piece};
use crate::pole_matrices::{LimitSystem, Variant};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// (μ, ν) dialect of the reduced equation at singular points (0, a, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeunParameters {
    pub variant: Variant,
    pub a: C64,
    pub alpha: [C64; 3],
    pub delta: C64,
    pub mu: C64,
    pub nu: C64,
}

/// Canonical GHE
/// y″ + (γ/λ + κ/(λ−1) + ε/(λ−a))y′ + (αβλ − q)/(λ(λ−1)(λ−a))·y = 0.
/// The exponent parameter κ is stored as `kappa_exp`; it is unrelated to the
/// gauge κ of the Fuchsian system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeunCanonicalGHE {
    pub gamma: C64,
    #[serde(rename = "kappa")]
    pub kappa_exp: C64,
    pub epsilon: C64,
    pub alpha: C64,
    pub beta: C64,
    pub q: C64,
    pub a: C64,
}

impl HeunCanonicalGHE {
    /// γ + κ + ε − α − β − 1.
    pub fn fuchs_residual(&self) -> C64 {
        self.gamma + self.kappa_exp + self.epsilon - self.alpha - self.beta - 1.0
    }
    /// Exponent pairs at 0, 1, a and ∞.
    pub fn exponents(&self) -> [[C64; 2]; 4] {
        let z = C64::default();
        [[z, 1.0 - self.gamma], [z, 1.0 - self.kappa_exp], [z, 1.0 - self.epsilon], [self.alpha, self.beta]]
    }
    /// Coefficients (P, Q) of u″ + Pu′ + Qu at λ.
    pub fn coefficients(&self, lam: C64) -> Result<(C64, C64)> {
        let a = self.a;
        if lam.norm() < 1e-14 || (lam - 1.0).norm() < 1e-14 || (lam - a).norm() < 1e-14 {
            return Err(HeunError::AtSingularity(format!("{lam}")));
        }
        let p = self.gamma / lam + self.kappa_exp / (lam - 1.0) + self.epsilon / (lam - a);
        let q = (self.alpha * self.beta * lam - self.q) / (lam * (lam - 1.0) * (lam - a));
        Ok((p, q))
    }
}

/// μ for a variant, in factorized form.
pub fn mu_for(variant: Variant, alpha: [C64; 3], delta: C64) -> Result<C64> {
    let s = alpha[0] + alpha[1] + alpha[2];
    match variant {
        Variant::Regular => Ok((s - delta) * (s + delta - 2.0)),
        Variant::Hat => Ok((s - delta - 1.0) * (s + delta - 1.0)),
        Variant::Check => Ok((s - 2.0) * s),
        Variant::Tilde => Err(HeunError::VariantMismatch("the tilde limit has no GHE reduction".into())),
    }
}

/// The α-only part of ν: α₁+α₂−(α₁+α₂)²+α₃² + a(α₁+α₃−(α₁+α₃)²+α₂²).
fn nu_alpha_part(a: C64, alpha: [C64; 3]) -> C64 {
    let [a1, a2, a3] = alpha;
    a1 + a2 - (a1 + a2).powi(2) + a3 * a3 + a * (a1 + a3 - (a1 + a3).powi(2) + a2 * a2)
}

/// Regular ν from b₃: ν = α-part − δ²(1+a) + b₃(2δ−1).
pub fn nu_regular(a: C64, delta: C64, alpha: [C64; 3], b3: C64) -> C64 {
    nu_alpha_part(a, alpha) - delta * delta * (1.0 + a) + b3 * (2.0 * delta - 1.0)
}

/// Reduces a limit system to (μ, ν).
pub fn reduce(limit: &LimitSystem) -> Result<HeunParameters> {
    let (a, d, al) = (limit.a, limit.delta, limit.alpha);
    let b3 = limit.coeffs.b3;
    let nu = match limit.variant {
        Variant::Regular => nu_regular(a, d, al, b3),
        Variant::Hat => nu_alpha_part(a, al) - (d - 1.0).powi(2) * (1.0 + a) + b3 * (2.0 * d - 1.0),
        Variant::Check => b3 - (a + 1.0) / 2.0 + nu_alpha_part(a, al),
        Variant::Tilde => return Err(HeunError::VariantMismatch("the tilde limit has no GHE reduction".into())),
    };
    Ok(HeunParameters { variant: limit.variant, a, alpha: al, delta: d, mu: mu_for(limit.variant, al, d)?, nu })
}

/// Translates (μ, ν) into the canonical dialect. α, β are the roots of
/// t² − (γ+κ+ε−1)t + μ, with β = (γ+κ+ε−1) − α.
pub fn to_canonical_ghe(hp: &HeunParameters) -> HeunCanonicalGHE {
    let [a1, a2, a3] = hp.alpha;
    let gamma = 1.0 - 2.0 * a1;
    let epsilon = 1.0 - 2.0 * a2;
    let kappa_exp = 1.0 - 2.0 * a3;
    let s = gamma + kappa_exp + epsilon - 1.0;
    let alpha = (s + (s * s - 4.0 * hp.mu).sqrt()) / 2.0;
    HeunCanonicalGHE { gamma, kappa_exp, epsilon, alpha, beta: s - alpha, q: -hp.nu, a: hp.a }
}

impl HeunParameters {
    pub fn canonical(&self) -> HeunCanonicalGHE {
        to_canonical_ghe(self)
    }
}

/// GHE residual of a polynomial, with exact derivatives.
pub fn ghe_residual(u: &ComplexPoly, ghe: &HeunCanonicalGHE, lam: C64) -> Result<C64> {
    let (v, d1, d2) = u.eval3(lam);
    ghe_residual_values(v, d1, d2, ghe, lam)
}

/// GHE residual from sampled values (u, u′, u″) at λ.
pub fn ghe_residual_values(u: C64, du: C64, ddu: C64, ghe: &HeunCanonicalGHE, lam: C64) -> Result<C64> {
    let (p, q) = ghe.coefficients(lam)?;
    Ok(ddu + p * du + q * u)
}

/// Result of [`accessory_from_d1`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccessoryData {
    pub b3: C64,
    pub c0: C64,
    pub nu: C64,
}

/// b₃ = −d₁ + δ(a+1), c₀ = (b₃+a−1)/(2δ−1) and the regular ν.
pub fn accessory_from_d1(d1: C64, a: C64, delta: C64, alpha: [C64; 3]) -> Result<AccessoryData> {
    if (delta - 0.5).norm() < 1e-12 {
        return Err(HeunError::BadDelta(format!("{delta}")));
    }
    let b3 = -d1 + delta * (a + 1.0);
    let c0 = (b3 + a - 1.0) / (2.0 * delta - 1.0);
    Ok(AccessoryData { b3, c0, nu: nu_regular(a, delta, alpha, b3) })
}

/// ν as a function of c₀ along a σ = +1 pole, from b₃ = c₀(2δ−1) + 1 − a:
/// ν = (1−2δ)²c₀ + (2δ−1)(1−a) − δ²(1+a) + α-part.
pub fn accessory_from_c0(c0: C64, a: C64, delta: C64, alpha: [C64; 3]) -> C64 {
    let t = 2.0 * delta - 1.0;
    t * t * c0 + t * (1.0 - a) - delta * delta * (1.0 + a) + nu_alpha_part(a, alpha)
}

/// The displayed form ν = (1−2δ)²c₀ + 3δ²(1+a) + α-part. It disagrees with
/// [`reduce`] and is kept only for comparison.
pub fn accessory_from_c0_printed(c0: C64, a: C64, delta: C64, alpha: [C64; 3]) -> C64 {
    let t = 1.0 - 2.0 * delta;
    t * t * c0 + 3.0 * delta * delta * (1.0 + a) + nu_alpha_part(a, alpha)
}

/// Row of the limit-system solution and prefactor exponents e used by the reduction.
pub fn reduction_row(variant: Variant, alpha: [C64; 3]) -> Result<(usize, [C64; 3])> {
    match variant {
        Variant::Regular => Ok((0, alpha)),
        Variant::Hat => Ok((1, alpha)),
        Variant::Check => Ok((1, [alpha[0] - 0.5, alpha[1], alpha[2]])),
        Variant::Tilde => Err(HeunError::VariantMismatch("the tilde limit has no GHE reduction".into())),
    }
}

/// GHE residual of u = λ^{e₁}(λ−a)^{e₂}(λ−1)^{e₃}·ψ_r, divided by the prefactor,
/// for a solution vector ψ of the limit system at λ. Returns the residual and
/// the sum of the magnitudes of its three terms.
pub fn prefactored_row_residual(limit: &LimitSystem, hp: &HeunParameters, lam: C64, psi: [C64; 2]) -> Result<(C64, f64)> {
    let (r, e) = reduction_row(limit.variant, limit.alpha)?;
    let ghe = to_canonical_ghe(hp);
    let (p, q) = ghe.coefficients(lam)?;
    let a = limit.a;
    let dd = lam * (lam - 1.0) * (lam - a);
    let ddp = 3.0 * lam * lam - 2.0 * (1.0 + a) * lam + a;
    let n = limit.numerator(lam);
    let k = &limit.coeffs;
    let z = C64::default();
    let dn = {
        let d = 2.0 * k.a3 * lam + k.b3;
        ComplexMat2::new(d, k.bp.unwrap_or(z), k.bm, -d)
    };
    let am = n.scale(1.0 / dd);
    let da = dn.scale(1.0 / dd) - n.scale(ddp / (dd * dd));
    let apply = |m: &ComplexMat2, v: [C64; 2]| [m.a() * v[0] + m.b() * v[1], m.c() * v[0] + m.d() * v[1]];
    let d1 = apply(&am, psi);
    let d2 = apply(&(da + am * am), psi);
    let pts = [c(0.0), a, c(1.0)];
    let l: C64 = (0..3).map(|j| e[j] / (lam - pts[j])).sum();
    let lp: C64 = (0..3).map(|j| -e[j] / (lam - pts[j]).powi(2)).sum();
    // u/F, u′/F, u″/F
    let u0 = psi[r];
    let u1 = l * psi[r] + d1[r];
    let u2 = (l * l + lp) * psi[r] + 2.0 * l * d1[r] + d2[r];
    let res = u2 + p * u1 + q * u0;
    Ok((res, u2.norm() + (p * u1).norm() + (q * u0).norm()))
}

/// Relative prefactored-row residuals of both solution columns at `count`
/// points on the circle |λ − center| = radius, continuing Ψ (= I at the first
/// point) around the circle. Each entry is max over columns of |res|/scale.
pub fn row_residuals_on_circle(
    limit: &LimitSystem,
    hp: &HeunParameters,
    center: C64,
    radius: f64,
    count: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let poles = limit.poles().to_vec();
    let clearance = 1e-3 * radius;
    let step = 2.0 * std::f64::consts::PI / count as f64;
    let mut psi = ComplexMat2::identity();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let theta = 0.3 + i as f64 * step;
        let lam = center + C64::from_polar(radius, theta);
        if i > 0 {
            let mut path = ContourPath::new(poles.clone(), clearance);
            path.push(Piece::Arc { center, radius, theta0: theta - step, sweep: step });
            psi = transport_from(|l| limit.eval(l), &path, psi, tol)?;
        }
        let mut worst: f64 = 0.0;
        for col in [[psi.a(), psi.c()], [psi.b(), psi.d()]] {
            let (res, scale) = prefactored_row_residual(limit, hp, lam, col)?;
            worst = worst.max(res.norm() / scale.max(1e-300));
        }
        out.push(worst);
    }
    Ok(out)
}
