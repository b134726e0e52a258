//! Numerical monodromy of three-point Fuchsian fields: Frobenius solutions,
//! loop transport, the cyclic relation, trace coordinates and the Fricke cubic.

use crate::error::{HeunError, Result};
use crate::fuchsian::{FuchsianField, EPS_RES};
use crate::numerics::{dist_to_integer, thread_pool, transport, ComplexMat2, ContourPath, Piece};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

const TWO_PI_I: C64 = C64 { re: 0.0, im: 2.0 * PI };

/// Local solution Ψ_j = T_j(I + Σ G_k (λ−λ_j)^k)(λ−λ_j)^{α_jσ₃}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrobeniusData {
    pub index: usize,
    pub center: C64,
    pub t: ComplexMat2,
    pub alpha: C64,
    /// Distance to the nearest other singularity.
    pub radius: f64,
    /// G₀ = I, G₁, …
    pub coeffs: Vec<ComplexMat2>,
}

impl FrobeniusData {
    /// Ψ_j(λ) on the principal branch of (λ−λ_j)^{α_jσ₃}.
    pub fn eval(&self, lam: C64) -> Result<ComplexMat2> {
        let t = lam - self.center;
        if t.norm() >= self.radius {
            return Err(HeunError::BadGeometry(format!("{lam} outside the Frobenius disc")));
        }
        let mut s = ComplexMat2::zero();
        let mut w = c(1.0);
        for g in &self.coeffs {
            s = s + g.scale(w);
            w *= t;
        }
        Ok(self.t * s * ComplexMat2::exp_sigma3(self.alpha * t.ln()))
    }
}

/// Column eigenvector of `m` for eigenvalue `ev`.
fn eigenvector(m: &ComplexMat2, ev: C64) -> [C64; 2] {
    let u = [m.b(), ev - m.a()];
    let v = [ev - m.d(), m.c()];
    let nu = u[0].norm() + u[1].norm();
    let nv = v[0].norm() + v[1].norm();
    if nu >= nv {
        u
    } else {
        v
    }
}

/// Unimodular T with T⁻¹ A T = α σ₃; T = I when A is already diagonal.
pub fn diagonalizer(res: &ComplexMat2, alpha: C64) -> Result<ComplexMat2> {
    let mut v1 = eigenvector(res, alpha);
    let v2 = eigenvector(res, -alpha);
    let k = if v1[0].norm() >= v1[1].norm() { 0 } else { 1 };
    if v1[k].norm() == 0.0 {
        return Err(HeunError::ResonantExponent(0));
    }
    let piv = v1[k];
    v1 = [v1[0] / piv, v1[1] / piv];
    let det = v1[0] * v2[1] - v2[0] * v1[1];
    if det.norm() < 1e-14 {
        return Err(HeunError::ResonantExponent(0));
    }
    Ok(ComplexMat2::new(v1[0], v2[0] / det, v1[1], v2[1] / det))
}

/// Frobenius series at pole `j` of `field`, with local exponent `alpha`
/// (the eigenvalue of the residue placed first), through order `order`.
pub fn frobenius_series(field: &FuchsianField, j: usize, alpha: C64, order: usize) -> Result<FrobeniusData> {
    let lj = field.poles[j];
    if dist_to_integer(2.0 * alpha) <= EPS_RES {
        return Err(HeunError::ResonantExponent(j + 1));
    }
    let t = diagonalizer(&field.residues[j], alpha).map_err(|_| HeunError::ResonantExponent(j + 1))?;
    let ti = t.inv().ok_or(HeunError::ResonantExponent(j + 1))?;
    let radius = field
        .poles
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, p)| (p - lj).norm())
        .fold(f64::INFINITY, f64::min);
    // D_m = T⁻¹ C_m T, C_m the Taylor coefficients of Σ_{i≠j} A_i/(λ−λ_i) at λ_j.
    let d: Vec<ComplexMat2> = (0..order)
        .map(|m| {
            let cm: ComplexMat2 = field
                .poles
                .iter()
                .zip(&field.residues)
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, (&p, r))| {
                    let dl = lj - p;
                    r.scale((-1.0f64).powi(m as i32) / dl.powi(m as i32 + 1))
                })
                .sum();
            ti * cm * t
        })
        .collect();
    let mut g = vec![ComplexMat2::identity()];
    for k in 1..=order {
        let mut r = ComplexMat2::zero();
        for m in 0..k {
            r = r + d[m] * g[k - 1 - m];
        }
        let kf = k as f64;
        g.push(ComplexMat2::new(r.a() / kf, r.b() / (kf - 2.0 * alpha), r.c() / (kf + 2.0 * alpha), r.d() / kf));
    }
    Ok(FrobeniusData { index: j, center: lj, t, alpha, radius, coeffs: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopOptions {
    /// |λ| of the anchor on the negative real axis.
    pub anchor_radius: f64,
    /// Base point; defaults to a point below all singularities.
    pub base: Option<C64>,
    /// Loop radius as a fraction of the minimum pole separation.
    pub radius_factor: f64,
    pub tol: f64,
}

impl Default for LoopOptions {
    fn default() -> Self {
        LoopOptions { anchor_radius: 50.0, base: None, radius_factor: 0.2, tol: 1e-15 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonodromySet {
    pub m: [ComplexMat2; 3],
    pub m_inf: ComplexMat2,
    /// Ψ∞ = Ψ_j E_j at the base point, up to right diagonal factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<[ComplexMat2; 3]>,
}

impl MonodromySet {
    pub fn from_matrices(m: [ComplexMat2; 3], delta: C64) -> Self {
        MonodromySet { m, m_inf: ComplexMat2::exp_sigma3(-TWO_PI_I * delta), connection: None }
    }
    /// ‖M₁M₂M₃ − M∞‖ (max entry).
    pub fn cyclic_residual(&self) -> f64 {
        (self.m[0] * self.m[1] * self.m[2]).distance(&self.m_inf)
    }
    /// ‖M₃M₂M₁ − M∞‖, the product in reversed order.
    pub fn reversed_cyclic_residual(&self) -> f64 {
        (self.m[2] * self.m[1] * self.m[0]).distance(&self.m_inf)
    }
    /// max_j |det M_j − 1|.
    pub fn max_det_error(&self) -> f64 {
        self.m.iter().map(|m| (m.det() - 1.0).norm()).fold(0.0, f64::max)
    }
    /// max_j |det M_j − 1| / max(1, |m₁₁m₂₂| + |m₁₂m₂₁|), the error relative to
    /// the rounding floor of the determinant.
    pub fn max_rel_det_error(&self) -> f64 {
        self.m
            .iter()
            .map(|m| (m.det() - 1.0).norm() / ((m.a() * m.d()).norm() + (m.b() * m.c()).norm()).max(1.0))
            .fold(0.0, f64::max)
    }
    /// max_j |Tr M_j − 2cos 2πα_j|.
    pub fn trace_error(&self, alpha: [C64; 3]) -> f64 {
        (0..3).map(|j| (self.m[j].trace() - 2.0 * (2.0 * PI * alpha[j]).cos()).norm()).fold(0.0, f64::max)
    }
}

fn default_base(poles: &[C64]) -> C64 {
    let re = poles.iter().map(|p| p.re).sum::<f64>() / poles.len() as f64;
    let lo = poles.iter().map(|p| p.im).fold(f64::INFINITY, f64::min);
    let spread = poles.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max) - poles.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    C64::new(re, lo - spread.max(1.0))
}

/// Loop radii: `factor` times the minimum pole separation.
fn loop_radius(poles: &[C64], factor: f64) -> f64 {
    let mut dmin = f64::INFINITY;
    for i in 0..poles.len() {
        for j in i + 1..poles.len() {
            dmin = dmin.min((poles[i] - poles[j]).norm());
        }
    }
    factor * dmin
}

/// Closed path from `base` around pole `lj` counterclockwise at radius `r`.
pub fn loop_path(base: C64, lj: C64, r: f64, poles: &[C64]) -> ContourPath {
    let below = lj - C64::new(0.0, r);
    let mut p = ContourPath::new(poles.to_vec(), 0.25 * r);
    p.push(Piece::Line { from: base, to: below });
    p.push(Piece::Arc { center: lj, radius: r, theta0: -PI / 2.0, sweep: 2.0 * PI });
    p.push(Piece::Line { from: below, to: base });
    p
}

/// Monodromy of Ψ∞ around each pole, Ψ∞ ↦ Ψ∞M_j, with Ψ∞ normalized at
/// λ = −R (arg λ = π) and continued to the base point. The poles must appear
/// left to right as seen from the base, which makes M₁M₂M₃ = M∞.
pub fn monodromy_matrices(field: &FuchsianField, alpha: [C64; 3], opts: &LoopOptions) -> Result<MonodromySet> {
    let poles = field.poles.clone();
    if poles.len() != 3 {
        return Err(HeunError::BadGeometry(format!("{} poles, need 3", poles.len())));
    }
    let base = opts.base.unwrap_or_else(|| default_base(&poles));
    let args: Vec<f64> = poles.iter().map(|p| (p - base).arg()).collect();
    if !(args[0] > args[1] && args[1] > args[2]) || poles.iter().any(|p| p.im <= base.im) {
        return Err(HeunError::BadGeometry("poles must lie above the base, ordered left to right".into()));
    }
    let r = loop_radius(&poles, opts.radius_factor);
    let delta = field.delta_infinity()?;
    let anchor = c(-opts.anchor_radius);
    let psi_a = field.psi_infinity(anchor, 1e-18)?;
    let to_base = ContourPath::line(anchor, base).with_singularities(poles.clone(), 0.25 * r);
    let psi_b = transport(|l| field.eval(l), &to_base, opts.tol)? * psi_a;
    let psi_bi = psi_b.inv().ok_or_else(|| HeunError::NormalizationFailure("singular Ψ∞ at the base".into()))?;
    let work = |j: usize| -> Result<(ComplexMat2, ComplexMat2)> {
        let lj = poles[j];
        let tl = transport(|l| field.eval(l), &loop_path(base, lj, r, &poles), opts.tol)?;
        let mj = psi_bi * tl * psi_b;
        let fr = frobenius_series(field, j, alpha[j], 80)?;
        let below = lj - C64::new(0.0, r);
        let back = ContourPath::line(below, base).with_singularities(poles.clone(), 0.25 * r);
        let psi_j_base = transport(|l| field.eval(l), &back, opts.tol)? * fr.eval(below)?;
        let ej = psi_j_base.inv().ok_or_else(|| HeunError::NormalizationFailure("singular Ψ_j".into()))? * psi_b;
        Ok((mj, ej))
    };
    let out: Vec<(ComplexMat2, ComplexMat2)> =
        thread_pool().install(|| (0..3).into_par_iter().map(work).collect::<Result<Vec<_>>>())?;
    let mut set = MonodromySet::from_matrices([out[0].0, out[1].0, out[2].0], delta);
    set.connection = Some([out[0].1, out[1].1, out[2].1]);
    Ok(set)
}

/// a_j = Tr M_j, a∞ = Tr M∞ and t_ij = Tr(M_iM_j).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceCoordinates {
    pub a: [C64; 3],
    pub a_inf: C64,
    pub t12: C64,
    pub t23: C64,
    pub t31: C64,
}

impl TraceCoordinates {
    /// 2cos 2πσ = t_ij solved for σ on the principal branch.
    pub fn sigma(t: C64) -> C64 {
        (t / 2.0).acos() / (2.0 * PI)
    }
}

pub fn trace_coordinates(m: &MonodromySet) -> TraceCoordinates {
    let [m1, m2, m3] = m.m;
    TraceCoordinates {
        a: [m1.trace(), m2.trace(), m3.trace()],
        a_inf: m.m_inf.trace(),
        t12: (m1 * m2).trace(),
        t23: (m2 * m3).trace(),
        t31: (m3 * m1).trace(),
    }
}

/// Left-hand side of the Fricke cubic.
pub fn fricke_residual(tc: &TraceCoordinates) -> C64 {
    let [a1, a2, a3] = tc.a;
    let a4 = tc.a_inf;
    let (t12, t23, t31) = (tc.t12, tc.t23, tc.t31);
    t12 * t23 * t31 + t12 * t12 + t23 * t23 + t31 * t31
        - (a1 * a2 + a3 * a4) * t12
        - (a2 * a3 + a1 * a4) * t23
        - (a3 * a1 + a2 * a4) * t31
        + a1 * a1
        + a2 * a2
        + a3 * a3
        + a4 * a4
        + a1 * a2 * a3 * a4
        - 4.0
}

/// s₂ such that M₁M₂M₃ = M∞ for triangular M_j = [[e^{2πiα_j}, s_j], [0, e^{−2πiα_j}]]:
/// s₁e^{−2πiα₂} + s₂e^{2πiα₁} + s₃e^{−2πiδ} = 0.
pub fn reducible_s2(alpha: [C64; 3], delta: C64, s1: C64, s3: C64) -> C64 {
    -(s1 * (-TWO_PI_I * alpha[1]).exp() + s3 * (-TWO_PI_I * delta).exp()) / (TWO_PI_I * alpha[0]).exp()
}

/// Checks α₁+α₂+α₃+δ = −n.
pub fn check_exponent_sum(alpha: [C64; 3], delta: C64, n: usize) -> Result<()> {
    let e = alpha[0] + alpha[1] + alpha[2] + delta + n as f64;
    if e.norm() > 1e-12 {
        return Err(HeunError::ResonantAlpha(format!("alpha sum + delta + n = {e}")));
    }
    Ok(())
}

/// Upper-triangular monodromy with exponent sum α₁+α₂+α₃+δ = −n.
pub fn reducible_monodromy_set(alpha: [C64; 3], delta: C64, n: usize, s1: C64, s3: C64) -> Result<MonodromySet> {
    check_exponent_sum(alpha, delta, n)?;
    if s1.norm() == 0.0 || s3.norm() == 0.0 {
        return Err(HeunError::InvalidParameters("s1 and s3 must be nonzero".into()));
    }
    let s = [s1, reducible_s2(alpha, delta, s1, s3), s3];
    let m = [0, 1, 2].map(|j| {
        let e = (TWO_PI_I * alpha[j]).exp();
        ComplexMat2::new(e, s[j], C64::default(), 1.0 / e)
    });
    Ok(MonodromySet::from_matrices(m, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{FuchsianSystem, SystemSpec};

    fn system() -> FuchsianSystem {
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
    fn diagonal_residue_gives_identity() {
        let a = c(0.3);
        let t = diagonalizer(&ComplexMat2::diag(a, -a), a).unwrap();
        assert_eq!(t, ComplexMat2::identity());
        let s = system();
        let res = s.residues();
        for j in 0..3 {
            let t = diagonalizer(&res[j], s.alpha[j]).unwrap();
            assert!((t.det() - 1.0).norm() < 1e-12);
            let d = t.inv().unwrap() * res[j] * t;
            assert!(d.distance(&ComplexMat2::diag(s.alpha[j], -s.alpha[j])) < 1e-12);
        }
    }

    #[test]
    fn frobenius_matches_transport() {
        let s = system();
        let f = s.field();
        for j in 0..3 {
            let fr = frobenius_series(&f, j, s.alpha[j], 60).unwrap();
            let r = fr.radius / 2.0;
            let p1 = fr.center + C64::from_polar(r, -1.0);
            let p2 = fr.center + C64::from_polar(r, 0.5);
            let path = ContourPath::new(f.poles.clone(), 0.1 * r);
            let mut path = path;
            path.push(Piece::Arc { center: fr.center, radius: r, theta0: -1.0, sweep: 1.5 });
            let t = transport(|l| f.eval(l), &path, 1e-13).unwrap();
            let want = fr.eval(p2).unwrap();
            let got = t * fr.eval(p1).unwrap();
            assert!(got.distance(&want) < 1e-8 * want.max_abs(), "{j}");
        }
    }

    #[test]
    fn local_branch_factor() {
        let s = system();
        let f = s.field();
        let fr = frobenius_series(&f, 0, s.alpha[0], 60).unwrap();
        let r = fr.radius / 3.0;
        let mut path = ContourPath::new(f.poles.clone(), 0.1 * r);
        path.push(Piece::Arc { center: fr.center, radius: r, theta0: -PI / 2.0, sweep: 2.0 * PI });
        let p = fr.center + C64::new(0.0, -r);
        let t = transport(|l| f.eval(l), &path, 1e-13).unwrap();
        let want = fr.eval(p).unwrap() * ComplexMat2::exp_sigma3(TWO_PI_I * s.alpha[0]);
        assert!((t * fr.eval(p).unwrap()).distance(&want) < 1e-9);
    }

    #[test]
    fn single_pole_closed_form() {
        let d = c(0.3);
        let f = FuchsianField::new(vec![c(0.0)], vec![ComplexMat2::diag(-d, d)]);
        let lam = c(-5.0);
        let got = f.psi_infinity(lam, 1e-16).unwrap();
        let want = ComplexMat2::exp_sigma3(-d * lam.ln());
        assert!(got.distance(&want) < 1e-14);
        // a counterclockwise loop around 0 multiplies by exp(−2πiδσ₃)
        let mut path = ContourPath::new(vec![c(0.0)], 0.5);
        path.push(Piece::Arc { center: c(0.0), radius: 5.0, theta0: PI, sweep: 2.0 * PI });
        let t = transport(|l| f.eval(l), &path, 1e-13).unwrap();
        let m = got.inv().unwrap() * t * got;
        assert!(m.distance(&ComplexMat2::exp_sigma3(-TWO_PI_I * d)) < 1e-10);
    }

    #[test]
    fn cyclic_relation_and_traces() {
        let s = system();
        let set = monodromy_matrices(&s.field(), s.alpha, &LoopOptions::default()).unwrap();
        assert!(set.cyclic_residual() < 1e-8, "{:e}", set.cyclic_residual());
        assert!(set.reversed_cyclic_residual() > 1e-3);
        assert!(set.max_rel_det_error() < 1e-12, "{:e}", set.max_rel_det_error());
        assert!(set.trace_error(s.alpha) < 1e-8);
        let tc = trace_coordinates(&set);
        assert!(fricke_residual(&tc).norm() < 1e-8);
        let e = set.connection.unwrap();
        for j in 0..3 {
            let mj = e[j].inv().unwrap() * ComplexMat2::exp_sigma3(TWO_PI_I * s.alpha[j]) * e[j];
            assert!(mj.distance(&set.m[j]) < 1e-8);
            assert!((e[j].det() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn loop_radius_independence() {
        let s = FuchsianSystem::new(SystemSpec {
            delta: c(0.3),
            alpha: [c(0.2), c(0.31), c(0.17)],
            x: C64::new(0.5, 0.1),
            y: C64::new(0.5, 0.5),
            z: C64::new(0.05, -0.05),
            kappa: c(1.0),
        })
        .unwrap();
        let set = monodromy_matrices(&s.field(), s.alpha, &LoopOptions::default()).unwrap();
        assert!(set.max_rel_det_error() < 1e-12, "{:e}", set.max_rel_det_error());
        assert!(set.cyclic_residual() < 1e-8);
        let wide = LoopOptions { radius_factor: 0.4, ..LoopOptions::default() };
        let set2 = monodromy_matrices(&s.field(), s.alpha, &wide).unwrap();
        for j in 0..3 {
            assert!(set.m[j].distance(&set2.m[j]) < 1e-8);
        }
    }

    #[test]
    fn bad_geometry() {
        let f = FuchsianField::new(vec![c(0.0), c(2.0), c(1.0)], vec![ComplexMat2::zero(); 3]);
        assert!(matches!(monodromy_matrices(&f, [c(0.1); 3], &LoopOptions::default()), Err(HeunError::BadGeometry(_))));
    }

    #[test]
    fn fricke_identity_point() {
        let tc = TraceCoordinates { a: [c(2.0); 3], a_inf: c(2.0), t12: c(2.0), t23: c(2.0), t31: c(2.0) };
        assert_eq!(fricke_residual(&tc), C64::default());
        let off = TraceCoordinates { t12: c(2.1), ..tc };
        assert!(fricke_residual(&off).norm() > 1e-3);
    }

    #[test]
    fn reducible_set() {
        let al = [c(0.25); 3];
        let d = c(-0.75);
        assert!((reducible_s2(al, d, c(1.0), c(1.0)) - c(2.0)).norm() < 1e-14);
        let m = reducible_monodromy_set(al, d, 0, c(1.0), c(1.0)).unwrap();
        assert!(m.cyclic_residual() < 1e-14);
        assert!(m.trace_error(al) < 1e-14);
        let tc = trace_coordinates(&m);
        assert!((tc.t12 - 2.0 * (2.0 * PI * c(0.5)).cos()).norm() < 1e-14);
        assert!(fricke_residual(&tc).norm() < 1e-12);
        assert!(matches!(reducible_monodromy_set(al, c(-0.7), 0, c(1.0), c(1.0)), Err(HeunError::ResonantAlpha(_))));
    }
}
