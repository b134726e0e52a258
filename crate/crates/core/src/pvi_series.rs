//! Laurent jets of P_VI solutions at movable poles.
//!
//! Simple poles (δ ≠ ½): y = c₋₁/h + c₀ + c₁h + …, h = x − a, with
//! c₋₁ = σa(a−1)/(2(δ−½)) and c₀ free. Double poles (δ = ½):
//! y = c₋₂/h² + c₋₁/h + …, with c₋₂ free. Every further coefficient is
//! fixed by substituting the ansatz into the polynomial form of P_VI and
//! solving order by order.

use crate::error::{HeunError, Result};
use crate::fuchsian::{pvi_constants, pvi_residual, PviParameters};
use crate::numerics::dd::DDC;
use crate::numerics::series::{Laurent, EXACT};
use crate::numerics::Scalar;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_DEPTH: usize = 6;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentJet {
    pub center: C64,
    /// −1 (simple) or −2 (double).
    pub leading: i32,
    pub coeffs: BTreeMap<i32, C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i8>,
    pub delta: C64,
    pub alpha: [C64; 3],
}

impl LaurentJet {
    /// Highest retained power of h.
    pub fn highest_order(&self) -> i32 {
        *self.coeffs.keys().next_back().unwrap_or(&self.leading)
    }
    /// Number of retained coefficients.
    pub fn depth(&self) -> usize {
        (self.highest_order() - self.leading + 1) as usize
    }
    pub fn coeff(&self, k: i32) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }
    /// Keeps powers ≤ `order`.
    pub fn truncate(&self, order: i32) -> LaurentJet {
        let mut j = self.clone();
        j.coeffs.retain(|&k, _| k <= order);
        j
    }
    /// Keeps the first `m` coefficients.
    pub fn with_depth(&self, m: usize) -> LaurentJet {
        self.truncate(self.leading + m as i32 - 1)
    }
    pub fn laurent(&self) -> Laurent {
        let lo = self.leading;
        let hi = self.highest_order();
        Laurent::new(lo, (lo..=hi).map(|k| self.coeff(k)).collect(), hi + 1)
    }
    /// (y, y′, y″) of the truncated jet at x = a + h.
    pub fn value(&self, h: C64) -> (C64, C64, C64) {
        let (mut y, mut y1, mut y2) = (C64::default(), C64::default(), C64::default());
        for (&k, &ck) in &self.coeffs {
            let kf = k as f64;
            y += ck * h.powi(k);
            y1 += ck * kf * h.powi(k - 1);
            y2 += ck * kf * (kf - 1.0) * h.powi(k - 2);
        }
        (y, y1, y2)
    }
    fn value_dd(&self, h: DDC) -> (DDC, DDC, DDC) {
        let z = DDC::real(0.0);
        let (mut y, mut y1, mut y2) = (z, z, z);
        for (&k, &ck) in &self.coeffs {
            let ck = DDC::from(ck);
            let kf = k as f64;
            y = y + ck * h.powi(k);
            y1 = y1 + ck * DDC::real(kf) * h.powi(k - 1);
            y2 = y2 + ck * DDC::real(kf * (kf - 1.0)) * h.powi(k - 2);
        }
        (y, y1, y2)
    }
    pub fn pvi_parameters(&self) -> PviParameters {
        PviParameters::new(self.delta, self.alpha)
    }
}

fn check_center(a: C64) -> Result<()> {
    if a.norm() < 1e-12 || (a - 1.0).norm() < 1e-12 {
        return Err(HeunError::BadCenter(format!("{a}")));
    }
    Ok(())
}

/// c₋₁ = σa(a−1)/(2(δ−½)).
pub fn printed_simple_cm1(a: C64, sigma: i8, delta: C64) -> C64 {
    sigma as f64 * a * (a - 1.0) / (2.0 * (delta - 0.5))
}

/// Closed form of c₁ at a simple pole.
pub fn printed_simple_c1(a: C64, c0: C64, sigma: i8, delta: C64, alpha: [C64; 3]) -> C64 {
    let s = sigma as f64;
    let dh = delta - 0.5;
    let [a1, a2, a3] = alpha.map(|v| v * v);
    let q = 0.25;
    1.0 - (c0 - 1.0 / 3.0) / a - (c0 - 2.0 / 3.0) / (a - 1.0)
        + s / 3.0 * dh * (1.0 - (6.0 * c0 * c0 - 4.0 * c0 + 1.0) / a + (6.0 * c0 * c0 - 8.0 * c0 + 3.0) / (a - 1.0))
        + s / (2.0 * dh)
            * (1.0 - 2.0 / 3.0 * (a2 - q) + 2.0 / (3.0 * a) * (a3 - q) - 2.0 / (3.0 * (a - 1.0)) * (a1 - q))
}

/// c₋₁ = (2a−1)c₋₂/(a(a−1)).
pub fn printed_double_cm1(a: C64, cm2: C64) -> C64 {
    (2.0 * a - 1.0) * cm2 / (a * (a - 1.0))
}

/// Closed form of c₀ at a double pole.
pub fn printed_double_c0(a: C64, cm2: C64, alpha: [C64; 3]) -> C64 {
    let [a1, a2, a3] = alpha.map(|v| v * v);
    let aa = a * (a - 1.0);
    (a + 1.0) / 3.0
        + cm2 / (12.0 * aa * aa)
            * (12.0 * aa + 1.0 - 4.0 * a * a1 + 4.0 * (a - 1.0) * a3 - 4.0 * aa * (a2 - 0.25))
}

/// Polynomial form of P_VI, with X = x(x−1):
/// 2X²y(y−1)(y−x)y″ − X²[(y−1)(y−x)+y(y−x)+y(y−1)]y′² + 2X(2x−1)y(y−1)(y−x)y′
/// + 2X²y(y−1)y′ − 2[α₀y²(y−1)²(y−x)² + β₀x(y−1)²(y−x)² + γ₀(x−1)y²(y−x)² + δ₀Xy²(y−1)²],
/// as a series in h = x − a.
pub fn pvi_polynomial_series(y: &Laurent, a: C64, k: &PviParameters) -> Laurent {
    pvi_polynomial_series_in(y, a, [k.alpha0, k.beta0, k.gamma0, k.delta0])
}

/// [`pvi_polynomial_series`] at any precision, with constants [α₀, β₀, γ₀, δ₀].
pub fn pvi_polynomial_series_in<T: Scalar>(y: &Laurent<T>, a: T, k: [T; 4]) -> Laurent<T> {
    let one = T::one();
    let two = T::from_f64(2.0);
    let x = Laurent::poly(vec![a, one]);
    let xm = x.add_const(-one);
    let xx = x.mul(&xm);
    let xx2 = xx.mul(&xx);
    let yp = y.derivative();
    let ypp = yp.derivative();
    let ym = y.add_const(-one);
    let yx = y.sub(&x);
    let yy = y.mul(y);
    let ym2 = ym.mul(&ym);
    let yx2 = yx.mul(&yx);
    let y_ym = y.mul(&ym);
    let cub = y_ym.mul(&yx);
    let lhs = xx2.mul(&cub).mul(&ypp).scale(two);
    let bracket = ym.mul(&yx).add(&y.mul(&yx)).add(&y_ym);
    let r1 = xx2.mul(&bracket).mul(&yp.mul(&yp));
    let two_x_m1 = Laurent::poly(vec![a.scale(2.0) - one, two]);
    let r2 = xx.mul(&two_x_m1).mul(&cub).mul(&yp).scale(two).add(&xx2.mul(&y_ym).mul(&yp).scale(two));
    let r3 = yy
        .mul(&ym2)
        .mul(&yx2)
        .scale(k[0])
        .add(&x.mul(&ym2).mul(&yx2).scale(k[1]))
        .add(&xm.mul(&yy).mul(&yx2).scale(k[2]))
        .add(&xx.mul(&yy).mul(&ym2).scale(k[3]))
        .scale(two);
    lhs.sub(&r1).add(&r2).sub(&r3)
}

/// Order of the polynomial P_VI form at which c_k first enters linearly.
fn fixing_order(leading: i32, k: i32) -> i32 {
    if leading == -1 {
        k - 5
    } else {
        k - 8
    }
}

/// Fills in c_{leading+1}, …, c_upto that are absent from `known`, order by order.
/// `free` lists orders that are parameters of the family.
fn solve_recursion<T: Scalar>(
    a: T,
    params: [T; 4],
    leading: i32,
    known: &mut BTreeMap<i32, T>,
    free: &[i32],
    upto: i32,
) -> Result<()> {
    for k in leading + 1..=upto {
        if known.contains_key(&k) {
            continue;
        }
        if free.contains(&k) {
            return Err(HeunError::InvalidParameters(format!("free coefficient c_{k} not supplied")));
        }
        let trial = |v: T| {
            let coeffs: Vec<T> = (leading..=k).map(|j| if j == k { v } else { known.get(&j).copied().unwrap_or_default() }).collect();
            let y = Laurent::new(leading, coeffs, EXACT);
            pvi_polynomial_series_in(&y, a, params)
        };
        let o = fixing_order(leading, k);
        let e0 = trial(T::zero()).coeff(o);
        let e1 = trial(T::one()).coeff(o);
        let l = e1 - e0;
        if !(l.magnitude() > 1e-12 * (e0.magnitude().max(e1.magnitude()).max(1e-300))) {
            return Err(HeunError::RecursionSingular(k));
        }
        known.insert(k, -e0 / l);
    }
    Ok(())
}

fn constants(k: &PviParameters) -> [C64; 4] {
    [k.alpha0, k.beta0, k.gamma0, k.delta0]
}

fn validate_simple(a: C64, sigma: i8, delta: C64) -> Result<()> {
    if delta.norm() < 1e-14 || (delta - 0.5).norm() < 1e-12 {
        return Err(HeunError::BadDelta(format!("{delta}")));
    }
    if sigma != 1 && sigma != -1 {
        return Err(HeunError::InvalidParameters(format!("sigma must be +1 or -1, got {sigma}")));
    }
    check_center(a)
}

/// Simple-pole jet through power h^order, with printed c₋₁ and c₁.
pub fn simple_pole_jet(a: C64, c0: C64, sigma: i8, delta: C64, alpha: [C64; 3], order: i32) -> Result<LaurentJet> {
    validate_simple(a, sigma, delta)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(-1, printed_simple_cm1(a, sigma, delta));
    coeffs.insert(0, c0);
    coeffs.insert(1, printed_simple_c1(a, c0, sigma, delta, alpha));
    let jet = LaurentJet { center: a, leading: -1, coeffs, sigma: Some(sigma), delta, alpha };
    if order <= 1 {
        Ok(jet.truncate(order))
    } else {
        extend_jet(&jet, order)
    }
}

/// Double-pole jet (δ = ½) through power h^order, with printed c₋₁ and c₀.
pub fn double_pole_jet(a: C64, cm2: C64, alpha: [C64; 3], order: i32) -> Result<LaurentJet> {
    if cm2.norm() == 0.0 {
        return Err(HeunError::ZeroLeading);
    }
    check_center(a)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(-2, cm2);
    coeffs.insert(-1, printed_double_cm1(a, cm2));
    coeffs.insert(0, printed_double_c0(a, cm2, alpha));
    let jet = LaurentJet { center: a, leading: -2, coeffs, sigma: None, delta: c(0.5), alpha };
    if order <= 0 {
        Ok(jet.truncate(order))
    } else {
        extend_jet(&jet, order)
    }
}

/// Extends a jet through power h^target by the order-by-order recursion.
pub fn extend_jet(jet: &LaurentJet, target: i32) -> Result<LaurentJet> {
    let mut j = jet.clone();
    let free: &[i32] = if jet.leading == -1 { &[0] } else { &[] };
    solve_recursion(jet.center, constants(&jet.pvi_parameters()), jet.leading, &mut j.coeffs, free, target)?;
    Ok(j)
}

/// Recursion-only jet: only the leading data and the free parameter are
/// supplied; every other coefficient, printed or not, comes from the recursion.
pub fn recursion_simple_jet(a: C64, c0: C64, sigma: i8, delta: C64, alpha: [C64; 3], order: i32) -> Result<LaurentJet> {
    validate_simple(a, sigma, delta)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(-1, printed_simple_cm1(a, sigma, delta));
    coeffs.insert(0, c0);
    let params = PviParameters::new(delta, alpha);
    solve_recursion(a, constants(&params), -1, &mut coeffs, &[0], order)?;
    Ok(LaurentJet { center: a, leading: -1, coeffs, sigma: Some(sigma), delta, alpha })
}

/// Recursion-only double-pole jet from c₋₂ alone.
pub fn recursion_double_jet(a: C64, cm2: C64, alpha: [C64; 3], order: i32) -> Result<LaurentJet> {
    if cm2.norm() == 0.0 {
        return Err(HeunError::ZeroLeading);
    }
    check_center(a)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(-2, cm2);
    let params = PviParameters::new(c(0.5), alpha);
    solve_recursion(a, constants(&params), -2, &mut coeffs, &[], order)?;
    Ok(LaurentJet { center: a, leading: -2, coeffs, sigma: None, delta: c(0.5), alpha })
}

/// P_VI residual of the truncated jet at x = a + h.
pub fn jet_residual(jet: &LaurentJet, h: C64) -> Result<C64> {
    let (y, y1, y2) = jet.value(h);
    pvi_residual(y, y1, y2, jet.center + h, &jet.pvi_parameters())
}

/// As [`jet_residual`], with the jet and the rational right-hand side evaluated in
/// double-double arithmetic. The cancellation between y″ and the right-hand
/// side near the pole exceeds the range of f64 for small h.
pub fn jet_residual_dd(jet: &LaurentJet, h: C64) -> Result<C64> {
    let hd = DDC::from(h);
    let (y, yp, ypp) = jet.value_dd(hd);
    let x = DDC::from(jet.center) + hd;
    let one = DDC::real(1.0);
    let half = DDC::real(0.5);
    let k = jet.pvi_parameters();
    let (ym, yx, xm) = (y - one, y - x, x - one);
    if y.to_c64().norm() < 1e-300 || ym.to_c64().norm() < 1e-300 || yx.to_c64().norm() < 1e-300 {
        return Err(HeunError::CriticalValue(format!("{}", y.to_c64())));
    }
    let xx = x * xm;
    let t1 = half * (one / y + one / ym + one / yx) * yp * yp;
    let t2 = (one / x + one / xm + one / yx) * yp;
    let t3 = y * ym * yx / (xx * xx)
        * (DDC::from(k.alpha0)
            + DDC::from(k.beta0) * x / (y * y)
            + DDC::from(k.gamma0) * xm / (ym * ym)
            + DDC::from(k.delta0) * xx / (yx * yx));
    Ok((ypp - (t1 - t2 + t3)).to_c64())
}

/// Companion jets of z and κ along the pole.
///
/// z = (x(x−1)y′ − y² + y)/2 and κ = κ₀h^σ·exp(Σ_{k≥1} w_{k−1}h^k/k), where
/// (2δ−1)(y−x)/(x(x−1)) = σ/h + Σ w_k h^k. At a double pole κ = κ₀.
#[derive(Debug, Clone)]
pub struct PoleJets {
    pub jet: LaurentJet,
    pub kappa0: C64,
    /// Regular part of ln(κ/κ₀) − σ ln h, vanishing at h = 0.
    pub log_kappa: Laurent,
    pub sigma_exp: i32,
}

impl PoleJets {
    pub fn new(jet: &LaurentJet, kappa0: C64) -> PoleJets {
        let a = jet.center;
        if jet.leading == -2 {
            return PoleJets { jet: jet.clone(), kappa0, log_kappa: Laurent::poly(vec![]), sigma_exp: 0 };
        }
        let log_kappa = log_kappa_series(&jet.laurent(), a, jet.delta);
        PoleJets { jet: jet.clone(), kappa0, log_kappa, sigma_exp: jet.sigma.unwrap_or(0) as i32 }
    }
    /// Residue of d ln κ/dx at the pole (equals σ).
    pub fn kappa_residue(&self) -> C64 {
        let y = self.jet.laurent();
        let a = self.jet.center;
        (2.0 * self.jet.delta - 1.0) * y.coeff(-1) / (a * (a - 1.0))
    }
    /// (x, y, z, κ) at x = a + h.
    pub fn eval(&self, h: C64) -> (C64, C64, C64, C64) {
        let x = self.jet.center + h;
        let (y, y1, _) = self.jet.value(h);
        let z = (x * (x - 1.0) * y1 - y * y + y) / 2.0;
        let kappa = self.kappa0 * h.powi(self.sigma_exp) * self.log_kappa.eval(h).exp();
        (x, y, z, kappa)
    }
}

/// Regular part of ln(κ/κ₀) − σ ln h along a simple-pole series y.
fn log_kappa_series<T: Scalar>(y: &Laurent<T>, a: T, delta: T) -> Laurent<T> {
    let one = T::one();
    let x = Laurent::poly(vec![a, one]);
    let xx = x.mul(&x.add_const(-one));
    let n = (y.prec - y.val).max(0) as usize;
    let w = y.sub(&x).mul(&xx.inv(n + 2)).scale(delta.scale(2.0) - one);
    let reg = Laurent::new(0, (0..w.prec.max(0)).map(|k| w.coeff(k)).collect(), w.prec);
    reg.integral()
}

/// y, z and κ along a pole at any precision, built from the leading data by
/// the recursion alone.
#[derive(Debug, Clone)]
pub struct PoleSeries<T: Scalar> {
    pub center: T,
    pub y: Laurent<T>,
    pub kappa0: T,
    pub sigma_exp: i32,
    /// exp of the regular part of ln(κ/κ₀) − σ ln h.
    pub kappa_factor: Laurent<T>,
}

impl<T: Scalar> PoleSeries<T> {
    /// Simple pole with free coefficient c₀, through power h^order.
    pub fn simple(a: C64, c0: C64, sigma: i8, delta: C64, alpha: [C64; 3], kappa0: C64, order: i32) -> Result<Self> {
        validate_simple(a, sigma, delta)?;
        let (at, dt) = (T::from_c64(a), T::from_c64(delta));
        let alpha_t = alpha.map(T::from_c64);
        let cm1 = (at * (at - T::one())).scale(sigma as f64) / (dt - T::from_f64(0.5)).scale(2.0);
        let mut coeffs = BTreeMap::from([(-1, cm1), (0, T::from_c64(c0))]);
        solve_recursion(at, pvi_constants(dt, alpha_t), -1, &mut coeffs, &[0], order)?;
        let y = Laurent::new(-1, coeffs.into_values().collect(), order + 1);
        let kappa_factor = log_kappa_series(&y, at, dt).exp();
        Ok(PoleSeries { center: at, y, kappa0: T::from_c64(kappa0), sigma_exp: sigma as i32, kappa_factor })
    }
    /// Double pole (δ = ½) with leading coefficient c₋₂, through power h^order.
    pub fn double(a: C64, cm2: C64, alpha: [C64; 3], kappa0: C64, order: i32) -> Result<Self> {
        if cm2.norm() == 0.0 {
            return Err(HeunError::ZeroLeading);
        }
        check_center(a)?;
        let at = T::from_c64(a);
        let mut coeffs = BTreeMap::from([(-2, T::from_c64(cm2))]);
        solve_recursion(at, pvi_constants(T::from_f64(0.5), alpha.map(T::from_c64)), -2, &mut coeffs, &[], order)?;
        let y = Laurent::new(-2, coeffs.into_values().collect(), order + 1);
        Ok(PoleSeries { center: at, y, kappa0: T::from_c64(kappa0), sigma_exp: 0, kappa_factor: Laurent::poly(vec![T::one()]) })
    }
    /// (x, y, z, κ) at x = a + h.
    pub fn eval(&self, h: T) -> (T, T, T, T) {
        let x = self.center + h;
        let y = self.y.eval(h);
        let y1 = self.y.derivative().eval(h);
        let z = (x * (x - T::one()) * y1 - y * y + y).scale(0.5);
        let kappa = self.kappa0 * h.powi(self.sigma_exp) * self.kappa_factor.eval(h);
        (x, y, z, kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: f64, d: f64) -> C64 {
        c(n / d)
    }

    #[test]
    fn leading_coefficients() {
        let j = simple_pole_jet(c(2.0), c(0.0), 1, c(0.75), [c(0.25); 3], 4).unwrap();
        assert_eq!(j.coeff(-1), c(4.0));
        let j = simple_pole_jet(c(2.0), c(0.0), -1, c(0.75), [c(0.25); 3], 4).unwrap();
        assert_eq!(j.coeff(-1), c(-4.0));
        let d = double_pole_jet(c(2.0), c(1.0), [c(0.25); 3], 2).unwrap();
        assert_eq!(d.coeff(-1), c(1.5));
        let d3 = double_pole_jet(c(2.0), c(3.0), [c(0.25); 3], 0).unwrap();
        assert!((d3.coeff(-1) - 3.0 * d.coeff(-1)).norm() < 1e-15);
    }

    #[test]
    fn double_c0_additive_term() {
        // With c₋₂ → 0 only (a+1)/3 survives.
        let v = printed_double_c0(c(2.0), c(1e-300), [c(0.25); 3]);
        assert!((v - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn recursion_reproduces_printed() {
        let al = [q(1.0, 4.0), q(1.0, 3.0), q(1.0, 5.0)];
        let r = recursion_simple_jet(c(2.0), q(1.0, 7.0), 1, c(0.75), al, 3).unwrap();
        let p = printed_simple_c1(c(2.0), q(1.0, 7.0), 1, c(0.75), al);
        assert!((r.coeff(1) - p).norm() < 1e-12 * p.norm().max(1.0));
        let d = recursion_double_jet(c(2.0), q(3.0, 5.0), al, 1).unwrap();
        assert!((d.coeff(-1) - printed_double_cm1(c(2.0), q(3.0, 5.0))).norm() < 1e-12);
        assert!((d.coeff(0) - printed_double_c0(c(2.0), q(3.0, 5.0), al)).norm() < 1e-12);
    }

    #[test]
    fn extend_then_truncate_is_identity() {
        let j = simple_pole_jet(c(2.0), c(0.1), 1, c(0.75), [c(0.25); 3], 1).unwrap();
        let e = extend_jet(&j, 6).unwrap();
        assert_eq!(e.truncate(1), j);
        assert_eq!(e.depth(), 8);
    }

    #[test]
    fn errors() {
        assert!(matches!(simple_pole_jet(c(2.0), c(0.0), 1, c(0.5), [c(0.25); 3], 3), Err(HeunError::BadDelta(_))));
        assert!(matches!(simple_pole_jet(c(1.0), c(0.0), 1, c(0.75), [c(0.25); 3], 3), Err(HeunError::BadCenter(_))));
        assert!(matches!(double_pole_jet(c(2.0), c(0.0), [c(0.25); 3], 3), Err(HeunError::ZeroLeading)));
    }

    #[test]
    fn residual_scaling() {
        let j = extend_jet(&simple_pole_jet(c(2.0), c(0.25), 1, c(0.75), [c(0.25), c(0.375), c(0.125)], 1).unwrap(), 8).unwrap();
        for m in 3..=6 {
            let jm = j.with_depth(m);
            let h = c(4e-3);
            let r1 = jet_residual_dd(&jm, h).unwrap().norm();
            let r2 = jet_residual_dd(&jm, h / 2.0).unwrap().norm();
            let ratio = r1 / r2;
            let want = 2f64.powi(m as i32 - 3);
            assert!((ratio / want - 1.0).abs() < 0.1, "m={m} ratio={ratio}");
        }
    }

    #[test]
    fn kappa_residue_is_sigma() {
        for s in [1i8, -1] {
            let j = simple_pole_jet(c(2.0), c(0.3), s, c(0.8), [c(0.2), c(0.3), c(0.1)], 6).unwrap();
            let pj = PoleJets::new(&j, c(1.5));
            assert!((pj.kappa_residue() - c(s as f64)).norm() < 1e-13);
        }
    }

    #[test]
    fn kappa_jet_solves_flow() {
        let j = simple_pole_jet(c(2.0), c(0.3), -1, c(0.8), [c(0.2), c(0.3), c(0.1)], 14).unwrap();
        let pj = PoleJets::new(&j, c(1.5));
        let h = c(1e-2);
        let e = 1e-5;
        let (_, _, _, k1) = pj.eval(h + e);
        let (_, _, _, k0) = pj.eval(h - e);
        let (x, y, _, k) = pj.eval(h);
        let lhs = (k1 - k0) / (2.0 * e) / k;
        let rhs = crate::fuchsian::dln_kappa_dx(c(0.8), x, y);
        assert!((lhs - rhs).norm() < 1e-6 * rhs.norm(), "{lhs} {rhs}");
    }

    #[test]
    fn json_shape() {
        let j = simple_pole_jet(c(2.0), c(0.0), 1, c(0.75), [c(0.25); 3], 2).unwrap();
        let v = serde_json::to_value(&j).unwrap();
        assert_eq!(v["leading"], serde_json::json!(-1));
        assert_eq!(v["coeffs"]["-1"], serde_json::json!([4.0, 0.0]));
        assert_eq!(v["center"], serde_json::json!([2.0, 0.0]));
    }
}
