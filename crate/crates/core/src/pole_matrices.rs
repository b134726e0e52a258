//! Limits of A(λ) at movable poles of y(x) and the Schlesinger gauges that
//! regularize them.
//!
//! Every limit system has the shape
//! [(a₃λ²+b₃λ+c₃)σ₃ + (b₊λ+c₊)σ₊ + (b₋λ+c₋)σ₋] / (λ(λ−1)(λ−a)).

use crate::error::{HeunError, Result};
use crate::fuchsian::{derived_in, FuchsianField, FuchsianSystem};
use crate::numerics::dd::DDC;
use crate::numerics::{richardson, ComplexMat2, Scalar};
use crate::pvi_series::PoleSeries;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// σ = +1
    Regular,
    /// σ = −1, δ ≠ 1, gauge R₀
    Hat,
    /// σ = −1, δ = 1, gauge R₁
    Check,
    /// δ = ½ (double pole), gauge R₂
    Tilde,
}

impl std::str::FromStr for Variant {
    type Err = HeunError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Variant::Regular),
            "hat" => Ok(Variant::Hat),
            "check" => Ok(Variant::Check),
            "tilde" => Ok(Variant::Tilde),
            _ => Err(HeunError::ConfigInvalid(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitCoefficients {
    pub a3: C64,
    pub b3: C64,
    pub c3: C64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bp: Option<C64>,
    pub cp: C64,
    pub bm: C64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm: Option<C64>,
}

impl LimitCoefficients {
    pub fn max_distance(&self, o: &LimitCoefficients) -> f64 {
        let z = C64::default();
        [
            self.a3 - o.a3,
            self.b3 - o.b3,
            self.c3 - o.c3,
            self.bp.unwrap_or(z) - o.bp.unwrap_or(z),
            self.cp - o.cp,
            self.bm - o.bm,
            self.cm.unwrap_or(z) - o.cm.unwrap_or(z),
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }
    /// Relative version of [`max_distance`], entrywise against max(1, |o|).
    pub fn max_rel_distance(&self, o: &LimitCoefficients) -> f64 {
        let z = C64::default();
        let pairs = [
            (self.a3, o.a3),
            (self.b3, o.b3),
            (self.c3, o.c3),
            (self.bp.unwrap_or(z), o.bp.unwrap_or(z)),
            (self.cp, o.cp),
            (self.bm, o.bm),
            (self.cm.unwrap_or(z), o.cm.unwrap_or(z)),
        ];
        pairs.iter().map(|(u, v)| (u - v).norm() / v.norm().max(1.0)).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSystem {
    pub variant: Variant,
    pub a: C64,
    pub delta: C64,
    pub alpha: [C64; 3],
    pub kappa0: C64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0: Option<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm2: Option<C64>,
    #[serde(flatten)]
    pub coeffs: LimitCoefficients,
}

impl LimitSystem {
    pub fn numerator(&self, lam: C64) -> ComplexMat2 {
        let k = &self.coeffs;
        let z = C64::default();
        let d = k.a3 * lam * lam + k.b3 * lam + k.c3;
        ComplexMat2::new(d, k.bp.unwrap_or(z) * lam + k.cp, k.bm * lam + k.cm.unwrap_or(z), -d)
    }
    pub fn eval(&self, lam: C64) -> ComplexMat2 {
        self.numerator(lam).scale(1.0 / (lam * (lam - 1.0) * (lam - self.a)))
    }
    pub fn poles(&self) -> [C64; 3] {
        [c(0.0), self.a, c(1.0)]
    }
    /// Residues at (0, a, 1).
    pub fn residues(&self) -> [ComplexMat2; 3] {
        let a = self.a;
        [
            self.numerator(c(0.0)).scale(1.0 / a),
            self.numerator(a).scale(1.0 / (a * (a - 1.0))),
            self.numerator(c(1.0)).scale(1.0 / (1.0 - a)),
        ]
    }
    pub fn field(&self) -> FuchsianField {
        FuchsianField::new(self.poles().to_vec(), self.residues().to_vec())
    }
    /// Local exponents at (0, a, 1) and the formal monodromy at infinity
    /// after regularization.
    pub fn exponent_table(&self) -> ([C64; 3], C64) {
        let [a1, a2, a3] = self.alpha;
        match self.variant {
            Variant::Regular => ([a1, a2, a3], self.delta),
            Variant::Hat => ([a1, a2, a3], self.delta - 1.0),
            Variant::Check => ([a1 - 0.5, a2, a3], self.delta - 0.5),
            Variant::Tilde => ([a1, a2, a3], self.delta + 1.0),
        }
    }
}

fn check_a(a: C64) -> Result<()> {
    if a.norm() < 1e-12 || (a - 1.0).norm() < 1e-12 {
        return Err(HeunError::BadCenter(format!("{a}")));
    }
    Ok(())
}

fn check_k(k: C64) -> Result<()> {
    if k.norm() == 0.0 {
        return Err(HeunError::InvalidParameters("kappa0 must be nonzero".into()));
    }
    Ok(())
}

/// Limit at a σ = +1 simple pole.
pub fn limit_regular(a: C64, c0: C64, delta: C64, alpha: [C64; 3], kappa0: C64) -> Result<LimitSystem> {
    let d = delta;
    if d.norm() < 1e-14 || (d - 0.5).norm() < 1e-12 {
        return Err(HeunError::BadDelta(format!("{d}")));
    }
    check_a(a)?;
    check_k(kappa0)?;
    let [s1, s2, s3] = alpha.map(|v| v * v);
    let k0 = kappa0;
    let e = 2.0 * d - 1.0;
    let aa = a * (a - 1.0);
    let a3 = -d;
    let b3 = c0 * e + 1.0 - a;
    let c3 = 1.0 / (2.0 * d)
        * ((d - 1.0 - c0 * e).powi(2) - a * s1 + (a - 1.0) * s3 - aa * s2
            + a * (d * d - 2.0 - 2.0 * c0 * (2.0 * d * d + d - 1.0))
            + a * a * (d + 1.0).powi(2));
    let cp = -k0 * aa / e;
    let bm_br = a.powi(3) * (s2 - (1.0 + d).powi(2))
        + a * a
            * (3.0 - 2.0 * s2 - 3.0 * c0 + s2 * c0 + 2.0 * d + s2 * d + 2.0 * c0 * d - 2.0 * s2 * c0 * d - 2.0 * d * d
                + 7.0 * c0 * d * d
                - d.powi(3)
                + 2.0 * c0 * d.powi(3)
                + s1 * (1.0 + d)
                - s3 * (1.0 + d))
        - a * (s1 * (1.0 - d + c0 * e) - s3 * (2.0 + d + c0 * e) - s2 * (1.0 - d + c0 * e)
            + (1.0 - d + c0 * e) * (3.0 + d - d * d + c0 * (-3.0 + 4.0 * d + 4.0 * d * d)))
        + (1.0 + c0 * e) * (-s3 + (-1.0 + c0 + d - 2.0 * c0 * d).powi(2));
    let bm = e / (k0 * d * aa) * bm_br;
    let w = s2 - (d + 1.0).powi(2);
    let v = s3 - (d - 1.0 + c0 * (1.0 - 2.0 * d)).powi(2);
    let u = 2.0 + s1 - s3 - s2 - d * d + 2.0 * c0 * (-1.0 + d + 2.0 * d * d);
    let printed = a.powi(4) * w * w - 2.0 * a.powi(3) * w * (-2.0 - s1 + s3 + s2 + d * d + 2.0 * c0 * (1.0 - d - 2.0 * d * d))
        + 2.0 * a * v * u
        + v * v;
    let (c02, d2, d3, d4) = (c0 * c0, d * d, d.powi(3), d.powi(4));
    let q = s1 * s1 - 2.0 * s1 * s2 - 2.0 * s1 * s3 + 8.0 * s1 * c0 * d2 + 4.0 * s1 * c0 * d - 4.0 * s1 * c0 - 6.0 * s1 * d2
        + 4.0 * s1
        + s2 * s2
        + 4.0 * s2 * s3
        - 8.0 * s2 * c02 * d2
        + 8.0 * s2 * c02 * d
        - 2.0 * s2 * c02
        - 16.0 * s2 * c0 * d
        + 8.0 * s2 * c0
        + 4.0 * s2 * d
        - 6.0 * s2
        + s3 * s3
        - 8.0 * s3 * c0 * d2
        - 4.0 * s3 * c0 * d
        + 4.0 * s3 * c0
        - 4.0 * s3 * d
        - 6.0 * s3
        + 24.0 * c02 * d4
        + 24.0 * c02 * d3
        - 18.0 * c02 * d2
        - 12.0 * c02 * d
        + 6.0 * c02
        - 16.0 * c0 * d4
        - 8.0 * c0 * d3
        + 32.0 * c0 * d2
        + 12.0 * c0 * d
        - 12.0 * c0
        + 3.0 * d4
        - 8.0 * d2
        + 6.0;
    let cm = e / (4.0 * k0 * d * d * aa) * (printed + a * a * q);
    Ok(LimitSystem {
        variant: Variant::Regular,
        a,
        delta,
        alpha,
        kappa0,
        c0: Some(c0),
        cm2: None,
        coeffs: LimitCoefficients { a3, b3, c3, bp: None, cp, bm, cm: Some(cm) },
    })
}

/// Limit of the R₀-gauged system at a σ = −1 simple pole (δ ≠ 1).
pub fn limit_hat(a: C64, c0: C64, delta: C64, alpha: [C64; 3], kappa0: C64) -> Result<LimitSystem> {
    let d = delta;
    if d.norm() < 1e-14 || (d - 0.5).norm() < 1e-12 || (d - 1.0).norm() < 1e-12 {
        return Err(HeunError::BadDelta(format!("{d}")));
    }
    check_a(a)?;
    check_k(kappa0)?;
    let [s1, s2, s3] = alpha.map(|v| v * v);
    let k0 = kappa0;
    let e = 2.0 * d - 1.0;
    let aa = a * (a - 1.0);
    let a3 = 1.0 - d;
    let b3 = a - 1.0 + c0 * e;
    let c3 = 1.0 / (2.0 * (d - 1.0))
        * (a * a * ((d - 2.0).powi(2) - s2)
            + a * (-s1 + s3 + s2 + (d - 1.0).powi(2) - 2.0 - c0 * (4.0 * (d - 1.0).powi(2) - 2.0 * d))
            - s3
            + (d - c0 * e).powi(2));
    let q = s3 - (c0 + d - 2.0 * c0 * d).powi(2);
    let bp = k0 / (aa * (d - 1.0) * e)
        * (a.powi(3) * (-s2 + (d - 2.0).powi(2))
            + a * a
                * (s2 - 2.0 + c0 * (s2 - 8.0) + (d - 2.0) * (s1 - s3) + d * (s2 - 5.0) + 2.0 * c0 * d * (11.0 - s2)
                    + c0 * d * d * (2.0 * d - 13.0)
                    - d * d * (d - 5.0))
            - (c0 * e - 1.0) * q
            - a * (c0 * c0 * (1.0 - 2.0 * d).powi(2) * (2.0 * d - 5.0) - d * (3.0 + s1 - s2 + d - d * d)
                + c0 * e * (3.0 + s1 - s2 + 6.0 * d - 3.0 * d * d)
                + s3 * (3.0 - d - c0 * e)));
    let w = s2 - (d - 2.0).powi(2);
    let (c02, d2, d3, d4) = (c0 * c0, d * d, d.powi(3), d.powi(4));
    let quad = s1 * s1 + s3 * s3 + (s2 - 1.0).powi(2) + 8.0 * c0 * (1.0 - s2) + c02 * (24.0 - 2.0 * s2) + 4.0 * d * (1.0 - s2)
        + c0 * d * (12.0 + 16.0 * s2)
        + c02 * d * (-120.0 + 8.0 * s2)
        + d2 * (10.0 - 88.0 * c0 + c02 * (198.0 - 8.0 * s2))
        + d3 * (-12.0 + 72.0 * c0 - 120.0 * c02)
        + d4 * (3.0 - 16.0 * c0 + 24.0 * c02)
        - 2.0 * s1 * (1.0 + s3 + s2 - 4.0 * c0 - 6.0 * d + 10.0 * c0 * d + 3.0 * d2 - 4.0 * c0 * d2)
        + 2.0 * s3 * (-5.0 + 2.0 * s2 + 2.0 * d - 2.0 * c0 * (2.0 - 5.0 * d + 2.0 * d2));
    let cp = k0 / (4.0 * aa * (d - 1.0).powi(2) * e)
        * (a.powi(4) * w * w
            - 2.0 * a.powi(3) * w * (-1.0 - 2.0 * d + d2 - s1 + s3 + s2 + c0 * (-4.0 + 10.0 * d - 4.0 * d2))
            + a * a * quad
            + 2.0 * a * q * (1.0 + 2.0 * d - d2 + s1 - s3 - s2 + c0 * (4.0 - 10.0 * d + 4.0 * d2))
            + q * q);
    let cm = -aa * e / k0;
    Ok(LimitSystem {
        variant: Variant::Hat,
        a,
        delta,
        alpha,
        kappa0,
        c0: Some(c0),
        cm2: None,
        coeffs: LimitCoefficients { a3, b3, c3, bp: Some(bp), cp, bm: C64::default(), cm: Some(cm) },
    })
}

/// Limit of the R₁-gauged system at a σ = −1 simple pole with δ = 1.
pub fn limit_check(a: C64, c0: C64, alpha: [C64; 3], kappa0: C64) -> Result<LimitSystem> {
    check_a(a)?;
    check_k(kappa0)?;
    let [al1, _, _] = alpha;
    let [s1, s2, s3] = alpha.map(|v| v * v);
    let k0 = kappa0;
    let a3 = c(-0.5);
    let b3 = c0 + 1.5 * a - 0.5;
    let c3 = a * (al1 - 0.5);
    let bp = k0 / (a * (a - 1.0)) * (a * a * (1.0 - s2) - a * (2.0 + s1 - s3 - s2 - 2.0 * c0) - s3 + (c0 - 1.0).powi(2));
    let cp = k0 * (-s3 + s2 + (a + 1.0) / (a - 1.0) * s1 + 2.0 * al1 * (c0 / (a - 1.0) + 1.0));
    let bm = -a * (a - 1.0) / k0;
    Ok(LimitSystem {
        variant: Variant::Check,
        a,
        delta: c(1.0),
        alpha,
        kappa0,
        c0: Some(c0),
        cm2: None,
        coeffs: LimitCoefficients { a3, b3, c3, bp: Some(bp), cp, bm, cm: None },
    })
}

/// Limit of the R₂-gauged system at a double pole (δ = ½).
pub fn limit_tilde(a: C64, cm2: C64, alpha: [C64; 3], kappa0: C64) -> Result<LimitSystem> {
    check_a(a)?;
    check_k(kappa0)?;
    if cm2.norm() == 0.0 {
        return Err(HeunError::ZeroLeading);
    }
    let [s1, s2, s3] = alpha.map(|v| v * v);
    let (k0, cc) = (kappa0, cm2);
    let aa = a * (a - 1.0);
    let (aa2, aa4, aa6, aa8, aa10) = (aa.powi(2), aa.powi(4), aa.powi(6), aa.powi(8), aa.powi(10));
    let l = 4.0 * a * s1 - 4.0 * (a - 1.0) * s3 + 4.0 * aa * s2;
    let a3 = c(-1.5);
    let b3 = a + 1.0 - aa2 / (2.0 * cc);
    let c3 = aa4 / (12.0 * cc * cc)
        + aa2 * (a + 1.0) / (6.0 * cc)
        + (a * a * (1.0 - 4.0 * s2) + a * (-7.0 - 4.0 * s1 + 4.0 * s3 + 4.0 * s2) + 1.0 - 4.0 * s3) / 12.0;
    let cp = -k0 * cc / aa2;
    let bm = -(aa8 / (12.0 * k0 * cc.powi(4)) - aa4 / (12.0 * k0 * cc * cc) * (3.0 * (a * a - a + 1.0) + l)
        + aa2 / (12.0 * k0 * cc)
            * (-2.0 * a.powi(3) + 3.0 * a * a + 3.0 * a - 2.0 - 4.0 * a * (a + 1.0) * s1
                + 4.0 * (a * a - 3.0 * a + 2.0) * s3
                + 4.0 * a * (2.0 * a * a - 3.0 * a + 1.0) * s2));
    let m = 7.0 + 4.0 * s1 - 4.0 * s3 - 4.0 * s2;
    let cm = aa10 / (144.0 * k0 * cc.powi(5)) + aa8 * (a + 1.0) / (36.0 * k0 * cc.powi(4))
        - aa6 / (72.0 * k0 * cc.powi(3)) * (-3.0 * (a * a - a + 1.0) + l)
        - aa4 * (a + 1.0) / (36.0 * k0 * cc * cc) * (-a * a + 7.0 * a - 1.0 + l)
        + aa2 / (144.0 * k0 * cc)
            * ((1.0 - 4.0 * s3).powi(2) + a.powi(4) * (1.0 - 4.0 * s2).powi(2) + 2.0 * a * (-1.0 + 4.0 * s3) * m
                + 2.0 * a.powi(3) * m * (-1.0 + 4.0 * s2)
                + a * a
                    * (51.0 + 16.0 * s1 * s1 + 16.0 * s3 * s3 - 64.0 * s2 + 16.0 * s2 * s2 + 64.0 * s3 * (-1.0 + s2)
                        - 8.0 * s1 * (11.0 + 4.0 * s3 + 4.0 * s2)));
    Ok(LimitSystem {
        variant: Variant::Tilde,
        a,
        delta: c(0.5),
        alpha,
        kappa0,
        c0: None,
        cm2: Some(cm2),
        coeffs: LimitCoefficients { a3, b3, c3, bp: None, cp, bm, cm: Some(cm) },
    })
}

/// Schlesinger gauge R(λ), built from the data of a Fuchsian system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchlesingerGauge<T = C64> {
    Identity,
    /// Shifts δ by −1.
    R0 { x: T, y: T, p: T, kappa: T, delta: T },
    /// Shifts δ and the exponent at 0 by −½. Stored without its λ^{−½} prefactor.
    R1 { g: T, kappa: T },
    /// Shifts δ by +1.
    R2 { g2: T, kappa_tilde: T },
}

/// 2×2 matrix as [a, b, c, d], for arithmetic at any precision.
type Quad<T> = [T; 4];

fn qmul<T: Scalar>(m: Quad<T>, n: Quad<T>) -> Quad<T> {
    [m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3], m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]]
}

fn qinv<T: Scalar>(m: Quad<T>) -> Option<Quad<T>> {
    let det = m[0] * m[3] - m[1] * m[2];
    if det.magnitude() < 1e-300 {
        return None;
    }
    Some([m[3] / det, -m[1] / det, -m[2] / det, m[0] / det])
}

fn to_mat(m: Quad<C64>) -> ComplexMat2 {
    ComplexMat2::new(m[0], m[1], m[2], m[3])
}

/// Data of a Fuchsian system at one x, at any precision.
#[derive(Debug, Clone, Copy)]
struct SystemPoint<T> {
    delta: T,
    alpha0: T,
    x: T,
    y: T,
    z: T,
    kappa: T,
    p: T,
    y_tilde: T,
    kappa_tilde: T,
}

impl<T: Scalar> SystemPoint<T> {
    fn numerator(&self, lam: T) -> Quad<T> {
        let u = lam - self.y;
        let s = -self.delta * u * u + self.p * u + self.z;
        [s, self.kappa * u, self.kappa_tilde * (lam - self.y_tilde), -s]
    }
}

impl<T: Scalar> SchlesingerGauge<T> {
    fn for_point(v: Variant, s: &SystemPoint<T>) -> Self {
        match v {
            Variant::Regular => SchlesingerGauge::Identity,
            Variant::Hat => SchlesingerGauge::R0 { x: s.x, y: s.y, p: s.p, kappa: s.kappa, delta: s.delta },
            Variant::Check => {
                let g = -s.p - s.y + (s.z + s.alpha0 * s.x) / s.y;
                SchlesingerGauge::R1 { g, kappa: s.kappa }
            }
            Variant::Tilde => {
                let g2 = -(s.p.scale(2.0) + s.y.scale(2.0) - s.y_tilde.scale(2.0) + s.x + T::one()) / T::from_f64(3.0);
                SchlesingerGauge::R2 { g2, kappa_tilde: s.kappa_tilde }
            }
        }
    }

    /// M(λ) and M′(λ) as [a, b, c, d].
    pub fn polynomial_entries(&self, lam: T) -> (Quad<T>, Quad<T>) {
        let z = T::zero();
        let one = T::one();
        let two = T::from_f64(2.0);
        match *self {
            SchlesingerGauge::Identity => ([one, z, z, one], [z; 4]),
            SchlesingerGauge::R0 { x, y, p, kappa, delta: d } => (
                [
                    lam + (one + x - p.scale(2.0) - y * (d.scale(2.0) + one)) / (d - one).scale(2.0),
                    -kappa / (d.scale(2.0) - one),
                    (d.scale(2.0) - one) / kappa,
                    z,
                ],
                [one, z, z, z],
            ),
            SchlesingerGauge::R1 { g, kappa } => ([lam + g, -kappa, -g / kappa, one], [one, z, z, z]),
            SchlesingerGauge::R2 { g2, kappa_tilde: kt } => ([z, -two / kt, kt / two, lam + g2], [z, z, z, one]),
        }
    }

    /// λ(λ−1)(λ−x)·(R A R⁻¹ + R′R⁻¹) from the numerator N = λ(λ−1)(λ−x)·A.
    fn transform_numerator(&self, n: Quad<T>, lam: T, x: T) -> Option<Quad<T>> {
        let (m, dm) = self.polynomial_entries(lam);
        let mi = qinv(m)?;
        let w = lam * (lam - T::one()) * (lam - x);
        let mut l = qmul(dm, mi);
        if let SchlesingerGauge::R1 { .. } = self {
            let half = (lam.scale(2.0)).powi(-1);
            l[0] = l[0] - half;
            l[3] = l[3] - half;
        }
        let g = qmul(qmul(m, n), mi);
        Some([0, 1, 2, 3].map(|i| g[i] + l[i] * w))
    }
}

impl SchlesingerGauge {
    fn point(s: &FuchsianSystem) -> SystemPoint<C64> {
        SystemPoint {
            delta: s.delta,
            alpha0: s.alpha[0],
            x: s.x,
            y: s.y,
            z: s.z,
            kappa: s.kappa,
            p: s.p,
            y_tilde: s.y_tilde,
            kappa_tilde: s.kappa_tilde,
        }
    }
    pub fn r0(s: &FuchsianSystem) -> Self {
        Self::for_point(Variant::Hat, &Self::point(s))
    }
    pub fn r1(s: &FuchsianSystem) -> Self {
        Self::for_point(Variant::Check, &Self::point(s))
    }
    pub fn r2(s: &FuchsianSystem) -> Self {
        Self::for_point(Variant::Tilde, &Self::point(s))
    }
    pub fn for_variant(v: Variant, s: &FuchsianSystem) -> Self {
        Self::for_point(v, &Self::point(s))
    }
    /// Polynomial part M(λ) and M′(λ). For R₁ the gauge is λ^{−½}M.
    pub fn polynomial(&self, lam: C64) -> (ComplexMat2, ComplexMat2) {
        let (m, dm) = self.polynomial_entries(lam);
        (to_mat(m), to_mat(dm))
    }
    /// R(λ) and R′(λ) on the principal branch of √λ.
    pub fn eval(&self, lam: C64) -> (ComplexMat2, ComplexMat2) {
        let (m, dm) = self.polynomial(lam);
        match self {
            SchlesingerGauge::R1 { .. } => {
                let sq = lam.sqrt();
                (m.scale(1.0 / sq), dm.scale(1.0 / sq) - m.scale(1.0 / (2.0 * lam * sq)))
            }
            _ => (m, dm),
        }
    }
    /// det R(λ) (identically 1 for all gauges).
    pub fn det(&self, lam: C64) -> C64 {
        self.eval(lam).0.det()
    }
    /// R′R⁻¹, exact and branch independent.
    pub fn log_derivative(&self, lam: C64) -> Result<ComplexMat2> {
        let (m, dm) = self.polynomial(lam);
        let mi = m.inv().ok_or_else(|| HeunError::GaugeSingular(format!("{lam}")))?;
        let mut l = dm * mi;
        if let SchlesingerGauge::R1 { .. } = self {
            l = l - ComplexMat2::identity().scale(1.0 / (2.0 * lam));
        }
        Ok(l)
    }
    /// R A R⁻¹ + R′R⁻¹ at λ.
    pub fn transform(&self, a: &ComplexMat2, lam: C64) -> Result<ComplexMat2> {
        let (m, _) = self.polynomial(lam);
        let mi = m.inv().ok_or_else(|| HeunError::GaugeSingular(format!("{lam}")))?;
        Ok(m * *a * mi + self.log_derivative(lam)?)
    }
}

/// Gauged coefficient function λ ↦ R A(λ) R⁻¹ + R′R⁻¹.
pub fn apply_gauge<'a, F: Fn(C64) -> ComplexMat2 + 'a>(a: F, r: SchlesingerGauge) -> impl Fn(C64) -> Result<ComplexMat2> + 'a {
    move |lam| r.transform(&a(lam), lam)
}

/// Closed-form limit for a variant. `param` is c₀ (simple poles) or c₋₂ (Tilde).
pub fn limit_system(variant: Variant, a: C64, param: C64, delta: C64, alpha: [C64; 3], kappa0: C64) -> Result<LimitSystem> {
    match variant {
        Variant::Regular => limit_regular(a, param, delta, alpha, kappa0),
        Variant::Hat => limit_hat(a, param, delta, alpha, kappa0),
        Variant::Check => {
            if (delta - 1.0).norm() > 1e-12 {
                return Err(HeunError::VariantMismatch(format!("check variant needs delta = 1, got {delta}")));
            }
            limit_check(a, param, alpha, kappa0)
        }
        Variant::Tilde => {
            if (delta - 0.5).norm() > 1e-12 {
                return Err(HeunError::VariantMismatch(format!("tilde variant needs delta = 1/2, got {delta}")));
            }
            limit_tilde(a, param, alpha, kappa0)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub h0: f64,
    pub nodes: usize,
    pub depth: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { h0: 1e-2, nodes: 4, depth: 16 }
    }
}

const FIT_POINTS: [(f64, f64); 3] = [(0.3, 0.7), (-1.1, 0.4), (2.5, -1.3)];

/// Coefficients [q₂, q₁, q₀] of the quadratic through three points.
fn quadratic_fit<T: Scalar>(pts: [T; 3], vals: [T; 3]) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let w = vals[i] / ((pts[i] - pts[j]) * (pts[i] - pts[k]));
        out[0] = out[0] + w;
        out[1] = out[1] - w * (pts[j] + pts[k]);
        out[2] = out[2] + w * pts[j] * pts[k];
    }
    out
}

/// Coefficients of the gauged numerator λ(λ−1)(λ−x)·Â(λ) at x = a + h.
fn gauged_coefficients<T: Scalar>(
    variant: Variant,
    ps: &PoleSeries<T>,
    delta: T,
    alpha: [T; 3],
    h: T,
) -> Result<LimitCoefficients> {
    let (x, y, z, kappa) = ps.eval(h);
    let (p, y_tilde, kappa_tilde) = derived_in(delta, alpha, x, y, z, kappa);
    let pt = SystemPoint { delta, alpha0: alpha[0], x, y, z, kappa, p, y_tilde, kappa_tilde };
    let r = SchlesingerGauge::for_point(variant, &pt);
    let lams = FIT_POINTS.map(|(u, v)| T::from_c64(C64::new(u, v)));
    let mut vals = [[T::zero(); 4]; 3];
    for (i, &l) in lams.iter().enumerate() {
        vals[i] = r
            .transform_numerator(pt.numerator(l), l, x)
            .ok_or_else(|| HeunError::GaugeSingular(format!("{}", l.to_c64())))?;
    }
    let fit = |e: usize| quadratic_fit(lams, [vals[0][e], vals[1][e], vals[2][e]]).map(|v| v.to_c64());
    let (d, u, lo) = (fit(0), fit(1), fit(2));
    for v in d.iter().chain(&u).chain(&lo) {
        if !v.is_finite() {
            return Err(HeunError::DegenerateDenominator("gauged numerator".into()));
        }
    }
    Ok(LimitCoefficients { a3: d[0], b3: d[1], c3: d[2], bp: Some(u[1]), cp: u[2], bm: lo[1], cm: Some(lo[2]) })
}

fn combine(samples: &[LimitCoefficients]) -> LimitCoefficients {
    let pick = |f: &dyn Fn(&LimitCoefficients) -> C64| -> C64 {
        let v: Vec<C64> = samples.iter().map(f).collect();
        richardson(&v)
    };
    LimitCoefficients {
        a3: pick(&|s| s.a3),
        b3: pick(&|s| s.b3),
        c3: pick(&|s| s.c3),
        bp: Some(pick(&|s| s.bp.unwrap_or_default())),
        cp: pick(&|s| s.cp),
        bm: pick(&|s| s.bm),
        cm: Some(pick(&|s| s.cm.unwrap_or_default())),
    }
}

/// Numerical x → a limit of the gauged system along a pole, by Richardson
/// extrapolation over h = h₀·2^{−i}. `param` is c₀ or c₋₂ as for [`limit_system`].
///
/// The gauged entries are O(1) differences of terms of size up to h^{−8}, so
/// the pole series and the whole pipeline run in double-double arithmetic.
pub fn gauge_limit_oracle(
    variant: Variant,
    a: C64,
    param: C64,
    delta: C64,
    alpha: [C64; 3],
    kappa0: C64,
    opts: &OracleOptions,
) -> Result<LimitCoefficients> {
    gauge_limit_oracle_in::<DDC>(variant, a, param, delta, alpha, kappa0, opts)
}

/// [`gauge_limit_oracle`] with the arithmetic chosen by `T`. With `T = C64` the
/// default mesh loses 3 to 9 digits to cancellation, depending on the variant.
pub fn gauge_limit_oracle_in<T: Scalar>(
    variant: Variant,
    a: C64,
    param: C64,
    delta: C64,
    alpha: [C64; 3],
    kappa0: C64,
    opts: &OracleOptions,
) -> Result<LimitCoefficients> {
    limit_system(variant, a, param, delta, alpha, kappa0)?;
    let order = opts.depth as i32 - 2;
    let ps = match variant {
        Variant::Regular => PoleSeries::<T>::simple(a, param, 1, delta, alpha, kappa0, order)?,
        Variant::Hat | Variant::Check => PoleSeries::<T>::simple(a, param, -1, delta, alpha, kappa0, order)?,
        Variant::Tilde => PoleSeries::<T>::double(a, param, alpha, kappa0, order - 1)?,
    };
    let (dt, at) = (T::from_c64(delta), alpha.map(T::from_c64));
    let samples = (0..opts.nodes)
        .map(|i| gauged_coefficients(variant, &ps, dt, at, T::from_f64(opts.h0 / 2f64.powi(i as i32))))
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(&samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{eigenvalue_error, SystemSpec};

    fn al() -> [C64; 3] {
        [c(0.25); 3]
    }

    #[test]
    fn printed_examples() {
        let r = limit_regular(c(2.0), c(0.0), c(0.75), al(), c(1.0)).unwrap();
        assert_eq!(r.coeffs.b3, c(-1.0));
        assert_eq!(r.coeffs.a3, c(-0.75));
        assert_eq!(r.coeffs.cp, c(-4.0));
        let h = limit_hat(c(2.0), c(0.0), c(0.75), al(), c(1.0)).unwrap();
        assert_eq!(h.coeffs.a3, c(0.25));
        assert_eq!(h.coeffs.cm, Some(c(-1.0)));
        assert_eq!(h.coeffs.b3, c(1.0));
        let k = limit_check(c(2.0), c(0.0), al(), c(1.0)).unwrap();
        assert_eq!(k.coeffs.a3, c(-0.5));
        assert_eq!(k.coeffs.c3, c(-0.5));
        assert_eq!(k.coeffs.bm, c(-2.0));
        let t = limit_tilde(c(2.0), c(1.0), al(), c(1.0)).unwrap();
        assert_eq!(t.coeffs.a3, c(-1.5));
        assert_eq!(t.coeffs.cp, c(-0.25));
        assert_eq!(t.coeffs.b3, c(1.0));
    }

    #[test]
    fn regular_lower_constant_from_determinant() {
        let al = [c(0.25), c(1.0 / 3.0), c(0.2)];
        let r = limit_regular(c(2.0), c(1.0 / 7.0), c(0.75), al, c(1.5)).unwrap();
        let k = r.coeffs;
        let want = (al[0] * al[0] * 4.0 - k.c3 * k.c3) / k.cp;
        assert!((k.cm.unwrap() - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn residue_spectra() {
        let a = C64::new(2.0, 0.3);
        let al = [C64::new(0.21, 0.02), c(0.33), c(0.17)];
        for ls in [
            limit_regular(a, c(0.4), c(0.7), al, c(1.3)).unwrap(),
            limit_hat(a, c(0.4), c(0.7), al, c(1.3)).unwrap(),
            limit_check(a, c(0.4), al, c(1.3)).unwrap(),
            limit_tilde(a, c(0.6), al, c(1.3)).unwrap(),
        ] {
            let (ex, dinf) = ls.exponent_table();
            assert!(eigenvalue_error(&ls.residues(), &ex) < 1e-10, "{:?}", ls.variant);
            assert!((ls.field().delta_infinity().unwrap() - dinf).norm() < 1e-12);
        }
    }

    #[test]
    fn gauges_unimodular() {
        let s = FuchsianSystem::new(SystemSpec {
            delta: C64::new(0.3, 0.1),
            alpha: [C64::new(0.2, 0.05), c(0.31), c(0.17)],
            x: C64::new(0.4, 0.3),
            y: C64::new(0.7, -0.2),
            z: C64::new(0.3, 0.2),
            kappa: C64::new(1.3, 0.4),
        })
        .unwrap();
        for g in [SchlesingerGauge::r0(&s), SchlesingerGauge::r1(&s), SchlesingerGauge::r2(&s)] {
            for l in [C64::new(0.3, 0.2), C64::new(-2.0, 1.0), C64::new(5.0, -3.0)] {
                assert!((g.det(l) - c(1.0)).norm() < 1e-12);
                let t = g.transform(&s.eval(l).unwrap(), l).unwrap();
                assert!(t.trace().norm() < 1e-12);
            }
        }
        let l = C64::new(0.7, 0.9);
        let a = s.eval(l).unwrap();
        assert_eq!(SchlesingerGauge::Identity.transform(&a, l).unwrap(), a);
        let (m, _) = SchlesingerGauge::r1(&s).polynomial(l);
        assert!((m.det() - l).norm() < 1e-13);
    }

    #[test]
    fn gauged_limits_match_closed_forms() {
        let a = c(2.0);
        let al = [c(0.25), c(1.0 / 3.0), c(0.2)];
        let k0 = c(1.5);
        let opts = OracleOptions::default();
        for (v, d, p) in [
            (Variant::Regular, c(0.75), c(1.0 / 7.0)),
            (Variant::Hat, c(0.75), c(1.0 / 7.0)),
            (Variant::Check, c(1.0), c(1.0 / 7.0)),
            (Variant::Tilde, c(0.5), c(0.6)),
        ] {
            let num = gauge_limit_oracle(v, a, p, d, al, k0, &opts).unwrap();
            let closed = limit_system(v, a, p, d, al, k0).unwrap().coeffs;
            let err = num.max_rel_distance(&closed);
            assert!(err < 1e-6, "{v:?}: {err:e}\n{num:?}\n{closed:?}");
        }
    }
}
