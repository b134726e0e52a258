//! The Painlevé VI Fuchsian system
//!
//! A(λ) = [(−δ(λ−y)² + p(λ−y) + z)σ₃ + κ(λ−y)σ₊ + κ̃(λ−ỹ)σ₋] / (λ(λ−1)(λ−x)),
//!
//! its derived parameters, isomonodromy flow, the P_VI equation, and the
//! asymptotics of the canonical solution at infinity together with their
//! inversion.

use crate::error::{HeunError, Result};
use crate::numerics::{dist_to_integer, ComplexMat2, Scalar};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Resonance threshold for 2δ and 2α_j.
pub const EPS_RES: f64 = 1e-9;
/// Inputs closer than this to resonance are accepted but flagged.
pub const NEAR_RES: f64 = 1e-6;
const EPS_DEN: f64 = 1e-13;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn one() -> C64 {
    c(1.0)
}

/// User-facing parameters {δ, α, x, y, z, κ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub delta: C64,
    pub alpha: [C64; 3],
    pub x: C64,
    pub y: C64,
    pub z: C64,
    #[serde(default = "one")]
    pub kappa: C64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParameters {
    pub p: C64,
    pub y_tilde: C64,
    pub kappa_tilde: C64,
}

/// p, ỹ and κ̃ in closed form.
pub fn derived_parameters(s: &SystemSpec) -> Result<DerivedParameters> {
    let SystemSpec { delta: d, alpha, x, y, z, kappa: k } = *s;
    if d.norm() == 0.0 {
        return Err(HeunError::BadDelta("0".into()));
    }
    let yd = y * (y - 1.0) * (y - x);
    if yd.norm() < EPS_DEN {
        return Err(HeunError::CriticalValue(format!("{y}")));
    }
    if k.norm() == 0.0 {
        return Err(HeunError::InvalidParameters("kappa must be nonzero".into()));
    }
    let (p, w, den) = p_and_w(d, alpha, x, y, z);
    if den.norm() < EPS_DEN {
        return Err(HeunError::DegenerateDenominator("y_tilde".into()));
    }
    let y_tilde = (y - 1.0) * w / den;
    if (y * y_tilde).norm() < EPS_DEN {
        return Err(HeunError::DegenerateDenominator("kappa_tilde".into()));
    }
    let kappa_tilde = w / (k * y * y_tilde);
    Ok(DerivedParameters { p, y_tilde, kappa_tilde })
}

/// p, the numerator w of ỹ/(y−1) and its denominator.
fn p_and_w<T: Scalar>(d: T, alpha: [T; 3], x: T, y: T, z: T) -> (T, T, T) {
    let f = T::from_f64;
    let one = T::one();
    let [a1, a2, a3] = alpha.map(|a| a * a);
    let two_d = d.scale(2.0);
    let yd = y * (y - one) * (y - x);
    let p = a1 * x / (two_d * y) - a3 * (x - one) / (two_d * (y - one)) + a2 * x * (x - one) / (two_d * (y - x))
        - d * (y.scale(3.0) - x - one).scale(0.5)
        - z * z / (two_d * yd);
    let w = a1 * x * x - (d * y * y + p * y - z).powi(2);
    let y2 = y * y;
    let den = a1 * x * x * (y - one) - a3 * (x - one).powi(2) * y + (d - p).powi(2) * y - f(4.0) * d * d * y2
        + f(6.0) * d * p * y2
        - p * p * y2
        + f(6.0) * d * d * y2 * y
        - f(4.0) * d * p * y2 * y
        - f(3.0) * d * d * y2 * y2
        - two_d * y * z
        + two_d * y2 * z
        + z * z;
    (p, w, den)
}

/// (p, ỹ, κ̃) without validation, at any precision.
pub fn derived_in<T: Scalar>(d: T, alpha: [T; 3], x: T, y: T, z: T, k: T) -> (T, T, T) {
    let (p, w, den) = p_and_w(d, alpha, x, y, z);
    let y_tilde = (y - T::one()) * w / den;
    (p, y_tilde, w / (k * y * y_tilde))
}

/// P_VI constants (α₀, β₀, γ₀, δ₀).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PviParameters {
    pub alpha0: C64,
    pub beta0: C64,
    pub gamma0: C64,
    pub delta0: C64,
}

impl PviParameters {
    pub fn new(delta: C64, alpha: [C64; 3]) -> Self {
        let [alpha0, beta0, gamma0, delta0] = pvi_constants(delta, alpha);
        PviParameters { alpha0, beta0, gamma0, delta0 }
    }
}

/// [α₀, β₀, γ₀, δ₀] at any precision.
pub fn pvi_constants<T: Scalar>(delta: T, alpha: [T; 3]) -> [T; 4] {
    let dh = delta - T::from_f64(0.5);
    [
        (dh * dh).scale(2.0),
        (alpha[0] * alpha[0]).scale(-2.0),
        (alpha[2] * alpha[2]).scale(2.0),
        (alpha[1] * alpha[1] - T::from_f64(0.25)).scale(-2.0),
    ]
}

/// Right-hand side of P_VI solved for y″.
pub fn pvi_rhs(y: C64, yp: C64, x: C64, k: &PviParameters) -> Result<C64> {
    let scale = 1.0 + y.norm();
    if y.norm() < 1e-14 * scale || (y - 1.0).norm() < 1e-14 * scale || (y - x).norm() < 1e-14 * scale {
        return Err(HeunError::CriticalValue(format!("{y}")));
    }
    let xx = x * (x - 1.0);
    let t1 = 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * yp * yp;
    let t2 = (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * yp;
    let t3 = y * (y - 1.0) * (y - x) / (xx * xx)
        * (k.alpha0 + k.beta0 * x / (y * y) + k.gamma0 * (x - 1.0) / (y - 1.0).powi(2) + k.delta0 * xx / (y - x).powi(2));
    Ok(t1 - t2 + t3)
}

/// y″ − RHS of P_VI.
pub fn pvi_residual(y: C64, yp: C64, ypp: C64, x: C64, k: &PviParameters) -> Result<C64> {
    Ok(ypp - pvi_rhs(y, yp, x, k)?)
}

/// Right-hand sides of the isomonodromy flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowDerivatives {
    pub dy: C64,
    pub dz: C64,
    pub dln_kappa: C64,
}

/// d ln κ/dx = (2δ−1)(y−x)/(x(x−1)).
pub fn dln_kappa_dx(delta: C64, x: C64, y: C64) -> C64 {
    (2.0 * delta - 1.0) * (y - x) / (x * (x - 1.0))
}

/// Isomonodromy flow in terms of (δ, α, x, y, z) only.
pub fn isomonodromy_flow_raw(delta: C64, alpha: [C64; 3], x: C64, y: C64, z: C64) -> Result<FlowDerivatives> {
    let xx = x * (x - 1.0);
    let den = xx * y * (y - 1.0) * (y - x);
    if den.norm() < EPS_DEN {
        return Err(HeunError::DegenerateDenominator("x(x-1)y(y-1)(y-x)".into()));
    }
    let d = delta;
    let [a1, a2, a3] = alpha.map(|a| a * a);
    let dy = (y * y - y + 2.0 * z) / xx;
    let dln_kappa = dln_kappa_dx(d, x, y);
    let ym = y - 1.0;
    let yx = y - x;
    let num = z * z * (x - 2.0 * y - 2.0 * x * y + 3.0 * y * y) + z * y * ym * yx * (y + x - 1.0)
        - a1 * x * ym * ym * yx * yx
        + a3 * (x - 1.0) * y * y * yx * yx
        - a2 * xx * y * y * ym * ym
        + d * (d - 1.0) * y * y * ym * ym * yx * yx;
    Ok(FlowDerivatives { dy, dz: num / den, dln_kappa })
}

/// Off-diagonal coefficients ψ₁, ψ₂ and diagonal data d₁, d₂₁, d₂₂ of
/// Ψ∞(λ) = (I + (ψ₁+d₁σ₃)/λ + …)λ^{−δσ₃}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExpansion {
    pub psi1: ComplexMat2,
    pub psi2: ComplexMat2,
    pub d1: C64,
    pub d21: C64,
    pub d22: C64,
}

impl AsymptoticExpansion {
    pub fn psi1_plus(&self) -> C64 {
        self.psi1.b()
    }
    pub fn psi2_plus(&self) -> C64 {
        self.psi2.b()
    }
    /// Builds the expansion from the first two coefficients F₁, F₂ of the
    /// normalized series at infinity.
    pub fn from_series(f1: &ComplexMat2, f2: &ComplexMat2) -> Self {
        let d1 = f1.a();
        let psi1 = ComplexMat2::new(C64::default(), f1.b(), f1.c(), C64::default());
        let m = *f2 - (psi1 * ComplexMat2::sigma3()).scale(d1);
        AsymptoticExpansion {
            psi1,
            psi2: ComplexMat2::new(C64::default(), m.b(), m.c(), C64::default()),
            d1,
            d21: m.a() - d1 * d1 / 2.0,
            d22: m.d() - d1 * d1 / 2.0,
        }
    }
}

/// Recovered P_VI data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PviData {
    pub kappa: C64,
    pub p: C64,
    pub y: C64,
    pub z: C64,
}

/// Inverts the asymptotic data to (κ, p, y, z).
pub fn recover_pvi(asym: &AsymptoticExpansion, x: C64, delta: C64) -> Result<PviData> {
    let d = delta;
    if (d - 0.5).norm() < 1e-10 {
        return Err(HeunError::BadDelta(format!("{d}")));
    }
    let p1 = asym.psi1_plus();
    if p1.norm() < 1e-13 {
        return Err(HeunError::TriangularExpansion);
    }
    let d1 = asym.d1;
    let dh = d - 0.5;
    let r = (d - 1.0) * asym.psi2_plus() / (dh * p1);
    let kappa = (2.0 * d - 1.0) * p1;
    let p = -d * (x + 1.0) + 2.0 * d * r + d1 * (d + 0.5) / dh;
    let y = x + 1.0 - r - d1 / dh;
    let (d21, d22) = (asym.d21, asym.d22);
    let z = -d21 + d22 - 2.0 * d * (d21 + d22) - d * x - (d * r + d1 / (2.0 * dh) - d * (x + 1.0)) * (r + d1 / dh);
    Ok(PviData { kappa, p, y, z })
}

/// Rational 2×2 field Σ A_j/(λ−λ_j) given by its poles and residues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuchsianField {
    pub poles: Vec<C64>,
    pub residues: Vec<ComplexMat2>,
}

impl FuchsianField {
    pub fn new(poles: Vec<C64>, residues: Vec<ComplexMat2>) -> Self {
        FuchsianField { poles, residues }
    }
    pub fn eval(&self, lam: C64) -> ComplexMat2 {
        self.poles
            .iter()
            .zip(&self.residues)
            .map(|(&l, r)| r.scale(1.0 / (lam - l)))
            .sum()
    }
    /// Formal monodromy at infinity: Σ A_j = −δ∞σ₃ when the sum is diagonal and traceless.
    pub fn delta_infinity(&self) -> Result<C64> {
        let s: ComplexMat2 = self.residues.iter().copied().sum();
        let scale = 1.0 + s.max_abs();
        if s.b().norm() > 1e-10 * scale || s.c().norm() > 1e-10 * scale || (s.a() + s.d()).norm() > 1e-10 * scale {
            return Err(HeunError::NormalizationFailure("sum of residues is not diagonal and traceless".into()));
        }
        Ok(-s.a())
    }
    /// Moment matrices Â_m = Σ A_j λ_j^m.
    fn moment(&self, m: i32) -> ComplexMat2 {
        self.poles.iter().zip(&self.residues).map(|(&l, r)| r.scale(l.powi(m))).sum()
    }
    /// Coefficients F₀ = I, F₁, …, F_K of Ψ∞ = (I + ΣF_kλ^{−k})λ^{−δσ₃}.
    pub fn infinity_series(&self, terms: usize) -> Result<Vec<ComplexMat2>> {
        let d = self.delta_infinity()?;
        let moments: Vec<ComplexMat2> = (0..=terms as i32).map(|m| self.moment(m)).collect();
        let mut f = vec![ComplexMat2::identity()];
        for k in 1..=terms {
            let mut r = ComplexMat2::zero();
            for m in 1..=k {
                r = r - moments[m] * f[k - m];
            }
            let kf = k as f64;
            let d12 = kf - 2.0 * d;
            let d21 = kf + 2.0 * d;
            if d12.norm() < EPS_RES || d21.norm() < EPS_RES {
                return Err(HeunError::ResonantDelta(format!("{d}")));
            }
            f.push(ComplexMat2::new(r.a() / kf, r.b() / d12, r.c() / d21, r.d() / kf));
        }
        Ok(f)
    }
    /// Ψ∞(λ) on the principal branch of λ^{−δσ₃}, summing the series until
    /// terms fall below `tol` relative to the partial sum.
    pub fn psi_infinity(&self, lam: C64, tol: f64) -> Result<ComplexMat2> {
        let rmax = self.poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
        let q = rmax / lam.norm();
        if q >= 0.5 {
            return Err(HeunError::NormalizationFailure(format!("anchor |λ| = {} too small", lam.norm())));
        }
        let terms = ((tol.ln() / q.ln()).ceil() as usize + 4).clamp(4, 400);
        let f = self.infinity_series(terms)?;
        let mut s = ComplexMat2::zero();
        let mut w = c(1.0);
        let mut last = f64::INFINITY;
        for fk in &f {
            let t = fk.scale(w);
            s = s + t;
            last = t.max_abs();
            w /= lam;
        }
        if !(last <= tol * s.max_abs().max(1.0) * 10.0) {
            return Err(HeunError::NormalizationFailure("series at infinity did not converge".into()));
        }
        let d = self.delta_infinity()?;
        Ok(s * ComplexMat2::exp_sigma3(-d * lam.ln()))
    }
}

/// The Fuchsian system with derived parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemSpec")]
pub struct FuchsianSystem {
    pub delta: C64,
    pub alpha: [C64; 3],
    pub x: C64,
    pub y: C64,
    pub z: C64,
    pub kappa: C64,
    pub p: C64,
    pub y_tilde: C64,
    pub kappa_tilde: C64,
    pub near_resonant: bool,
}

impl TryFrom<SystemSpec> for FuchsianSystem {
    type Error = HeunError;
    fn try_from(s: SystemSpec) -> Result<Self> {
        FuchsianSystem::new(s)
    }
}

impl FuchsianSystem {
    /// Validated construction, including the non-resonance conditions.
    pub fn new(s: SystemSpec) -> Result<Self> {
        let rd = dist_to_integer(2.0 * s.delta);
        if rd <= EPS_RES {
            return Err(HeunError::ResonantDelta(format!("{}", s.delta)));
        }
        let mut near = rd < NEAR_RES;
        for (j, a) in s.alpha.iter().enumerate() {
            let ra = dist_to_integer(2.0 * a);
            if ra <= EPS_RES {
                return Err(HeunError::ResonantExponent(j + 1));
            }
            near |= ra < NEAR_RES;
        }
        let mut sys = Self::new_allow_resonant(s)?;
        sys.near_resonant = near;
        Ok(sys)
    }

    /// Construction without the non-resonance checks, for limiting procedures
    /// at δ = 1 or δ = ½.
    pub fn new_allow_resonant(s: SystemSpec) -> Result<Self> {
        if s.x.norm() < EPS_DEN || (s.x - 1.0).norm() < EPS_DEN {
            return Err(HeunError::InvalidParameters(format!("x = {} coincides with 0 or 1", s.x)));
        }
        let dp = derived_parameters(&s)?;
        Ok(FuchsianSystem {
            delta: s.delta,
            alpha: s.alpha,
            x: s.x,
            y: s.y,
            z: s.z,
            kappa: s.kappa,
            p: dp.p,
            y_tilde: dp.y_tilde,
            kappa_tilde: dp.kappa_tilde,
            near_resonant: false,
        })
    }

    pub fn spec(&self) -> SystemSpec {
        SystemSpec { delta: self.delta, alpha: self.alpha, x: self.x, y: self.y, z: self.z, kappa: self.kappa }
    }

    pub fn poles(&self) -> [C64; 3] {
        [c(0.0), self.x, c(1.0)]
    }

    /// Numerator matrix N(λ) = λ(λ−1)(λ−x)A(λ).
    pub fn numerator(&self, lam: C64) -> ComplexMat2 {
        let u = lam - self.y;
        let s = -self.delta * u * u + self.p * u + self.z;
        ComplexMat2::new(s, self.kappa * u, self.kappa_tilde * (lam - self.y_tilde), -s)
    }

    /// A(λ); fails within 1e−12 of a pole.
    pub fn eval(&self, lam: C64) -> Result<ComplexMat2> {
        for q in self.poles() {
            if (lam - q).norm() < 1e-12 {
                return Err(HeunError::AtSingularity(format!("{lam}")));
            }
        }
        Ok(self.eval_unchecked(lam))
    }

    pub fn eval_unchecked(&self, lam: C64) -> ComplexMat2 {
        self.numerator(lam).scale(1.0 / (lam * (lam - 1.0) * (lam - self.x)))
    }

    /// Residues (A₁, A₂, A₃) at (0, x, 1).
    pub fn residues(&self) -> [ComplexMat2; 3] {
        let x = self.x;
        [
            self.numerator(c(0.0)).scale(1.0 / x),
            self.numerator(x).scale(1.0 / (x * (x - 1.0))),
            self.numerator(c(1.0)).scale(1.0 / (1.0 - x)),
        ]
    }

    pub fn field(&self) -> FuchsianField {
        FuchsianField::new(self.poles().to_vec(), self.residues().to_vec())
    }

    pub fn pvi_parameters(&self) -> PviParameters {
        PviParameters::new(self.delta, self.alpha)
    }

    pub fn flow(&self) -> Result<FlowDerivatives> {
        isomonodromy_flow_raw(self.delta, self.alpha, self.x, self.y, self.z)
    }

    /// Closed-form asymptotic data at infinity.
    pub fn psi_expansion(&self) -> Result<AsymptoticExpansion> {
        let d = self.delta;
        for bad in [0.5, -0.5, 1.0, -1.0] {
            if (d - bad).norm() < 1e-10 {
                return Err(HeunError::ResonantDelta(format!("{d}")));
            }
        }
        let (x, y, z, p, k, kt, yt) = (self.x, self.y, self.z, self.p, self.kappa, self.kappa_tilde, self.y_tilde);
        let zero = C64::default();
        let psi1 = ComplexMat2::new(zero, k / (2.0 * d - 1.0), -kt / (2.0 * d + 1.0), zero);
        let psi2p = k * (2.0 * p + (2.0 * d + 1.0) * y - x - 1.0) / (4.0 * (d - 1.0) * (d - 0.5));
        let psi2m = -kt * (2.0 * p - (2.0 * d + 1.0) * yt + x + 1.0 + 4.0 * d * y) / (4.0 * (d + 1.0) * (d + 0.5));
        let d1 = -p - d * (2.0 * y - x - 1.0);
        let b = p * (y - x - 1.0) + d * ((y - x - 1.0).powi(2) - x) - z;
        let d21 = k * kt / (2.0 * (1.0 + 2.0 * d)) + b / 2.0;
        let d22 = k * kt / (2.0 * (1.0 - 2.0 * d)) - b / 2.0;
        Ok(AsymptoticExpansion { psi1, psi2: ComplexMat2::new(zero, psi2p, psi2m, zero), d1, d21, d22 })
    }
}

/// max_j distance between spec(A_j) and {±α_j}.
pub fn eigenvalue_error(res: &[ComplexMat2], alpha: &[C64]) -> f64 {
    res.iter()
        .zip(alpha)
        .map(|(r, &a)| {
            let (l1, l2) = r.eigenvalues();
            let e1 = (l1 - a).norm().max((l2 + a).norm());
            let e2 = (l1 + a).norm().max((l2 - a).norm());
            e1.min(e2)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ode::rkf78;

    fn fixture() -> FuchsianSystem {
        FuchsianSystem::new(SystemSpec {
            delta: c(0.75),
            alpha: [c(0.25); 3],
            x: c(0.5),
            y: c(0.25),
            z: c(0.125),
            kappa: c(1.0),
        })
        .unwrap()
    }

    fn generic() -> FuchsianSystem {
        FuchsianSystem::new(SystemSpec {
            delta: C64::new(0.3, 0.1),
            alpha: [C64::new(0.2, 0.05), c(0.31), c(0.17)],
            x: C64::new(0.4, 0.3),
            y: C64::new(0.7, -0.2),
            z: C64::new(0.3, 0.2),
            kappa: C64::new(1.3, 0.4),
        })
        .unwrap()
    }

    #[test]
    fn residue_sum_and_spectrum() {
        for s in [fixture(), generic()] {
            let r = s.residues();
            let sum: ComplexMat2 = r.iter().copied().sum();
            assert!(sum.distance(&(ComplexMat2::sigma3() * (-s.delta))) < 1e-12);
            assert!(eigenvalue_error(&r, &s.alpha) < 1e-10);
        }
    }

    #[test]
    fn upper_entry_vanishes_at_y() {
        let s = generic();
        assert!(s.eval(s.y).unwrap().b().norm() < 1e-15);
        assert!(s.eval(C64::new(0.3, -1.2)).unwrap().trace().norm() < 1e-14);
    }

    #[test]
    fn residue_at_zero_by_limit() {
        let s = generic();
        let h = C64::new(1e-7, 0.0);
        let lim = s.eval(h).unwrap().scale(h);
        assert!(lim.distance(&s.residues()[0]) < 1e-5);
    }

    #[test]
    fn y_tilde_is_zero_of_lower_entry() {
        // ỹ from the closed form must be the root of A₂₁ fixed by det A₁ = −α₁².
        let s = generic();
        assert!(s.numerator(s.y_tilde).c().norm() < 1e-14);
        let a1 = s.residues()[0];
        assert!((a1.det() + s.alpha[0] * s.alpha[0]).norm() < 1e-12);
    }

    #[test]
    fn flow_fixture() {
        let f = fixture().flow().unwrap();
        assert!((f.dy - c(-0.25)).norm() < 1e-15);
        assert_eq!(dln_kappa_dx(c(0.75), c(0.5), c(0.5)), C64::default());
        let g = isomonodromy_flow_raw(c(0.75), [c(0.25); 3], c(0.3), c(0.3), c(0.1));
        assert!(matches!(g, Err(HeunError::DegenerateDenominator(_))));
    }

    #[test]
    fn flow_preserves_spectrum_and_solves_pvi() {
        let s0 = generic();
        let (d, al) = (s0.delta, s0.alpha);
        let x0 = s0.x;
        let dx = C64::new(0.02, 0.01);
        let rhs = |t: f64, u: &[C64; 3]| {
            let f = isomonodromy_flow_raw(d, al, x0 + dx * t, u[0], u[1]).unwrap();
            [f.dy * dx, f.dz * dx, f.dln_kappa * dx]
        };
        let (u, _) = rkf78(rhs, 0.0, 1.0, [s0.y, s0.z, s0.kappa.ln()], 1e-13).unwrap();
        let x1 = x0 + dx;
        let s1 = FuchsianSystem::new(SystemSpec { delta: d, alpha: al, x: x1, y: u[0], z: u[1], kappa: u[2].exp() }).unwrap();
        assert!(eigenvalue_error(&s1.residues(), &al) < 1e-8);
        // y″ from differentiating dy/dx along the flow.
        let f = s1.flow().unwrap();
        let xx = x1 * (x1 - 1.0);
        let ypp = ((2.0 * u[0] - 1.0) * f.dy + 2.0 * f.dz) / xx - (u[0] * u[0] - u[0] + 2.0 * u[1]) * (2.0 * x1 - 1.0) / (xx * xx);
        let r = pvi_residual(u[0], f.dy, ypp, x1, &s1.pvi_parameters()).unwrap();
        assert!(r.norm() < 1e-7, "{r}");
    }

    #[test]
    fn constant_is_not_a_solution() {
        let k = PviParameters::new(c(0.75), [c(0.25); 3]);
        let r = pvi_residual(c(0.3), c(0.0), c(0.0), c(0.5), &k).unwrap();
        assert!(r.norm() > 0.0);
        assert!(matches!(pvi_residual(c(0.5), c(0.0), c(0.0), c(0.5), &k), Err(HeunError::CriticalValue(_))));
    }

    #[test]
    fn psi_expansion_fixture_and_roundtrip() {
        let s = fixture();
        let e = s.psi_expansion().unwrap();
        assert!((e.psi1_plus() - c(2.0)).norm() < 1e-15);
        assert_eq!(e.psi1.a(), C64::default());
        let kk = s.kappa * s.kappa_tilde;
        let sum = kk / (2.0 * (1.0 + 2.0 * s.delta)) + kk / (2.0 * (1.0 - 2.0 * s.delta));
        assert!((e.d21 + e.d22 - sum).norm() < 1e-14);
        let g = generic();
        let back = recover_pvi(&g.psi_expansion().unwrap(), g.x, g.delta).unwrap();
        assert!((back.kappa - g.kappa).norm() < 1e-12);
        assert!((back.p - g.p).norm() < 1e-12);
        assert!((back.y - g.y).norm() < 1e-12);
        assert!((back.z - g.z).norm() < 1e-12);
    }

    #[test]
    fn series_matches_closed_form() {
        let g = generic();
        let f = g.field().infinity_series(2).unwrap();
        let a = AsymptoticExpansion::from_series(&f[1], &f[2]);
        let e = g.psi_expansion().unwrap();
        assert!(a.psi1.distance(&e.psi1) < 1e-12);
        assert!(a.psi2.distance(&e.psi2) < 1e-12);
        assert!((a.d1 - e.d1).norm() < 1e-12);
        assert!((a.d21 - e.d21).norm() < 1e-12);
        assert!((a.d22 - e.d22).norm() < 1e-12);
    }

    #[test]
    fn triangular_expansion_guard() {
        let mut e = fixture().psi_expansion().unwrap();
        e.psi1.m[0][1] = C64::default();
        assert!(matches!(recover_pvi(&e, c(0.5), c(0.75)), Err(HeunError::TriangularExpansion)));
        let e = fixture().psi_expansion().unwrap();
        let k = (2.0 * 0.75 - 1.0) * e.psi1_plus();
        assert!((k - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn resonance_rejected() {
        let sp = SystemSpec { delta: c(1.0), ..fixture().spec() };
        assert!(matches!(FuchsianSystem::new(sp), Err(HeunError::ResonantDelta(_))));
        assert!(FuchsianSystem::new_allow_resonant(sp).is_ok());
        let near = SystemSpec { delta: c(1.0 + 5e-8), ..fixture().spec() };
        assert!(FuchsianSystem::new(near).unwrap().near_resonant);
    }

    #[test]
    fn json_keys() {
        let s = fixture();
        let v = serde_json::to_value(s.spec()).unwrap();
        for k in ["delta", "alpha", "x", "y", "z", "kappa"] {
            assert!(v.get(k).is_some());
        }
        assert_eq!(v["x"], serde_json::json!([0.5, 0.0]));
        let back: FuchsianSystem = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
