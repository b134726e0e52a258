//! Moments φ_k = −(1/2πi)∫ g(ζ)ζ^{k−1}dζ over the broken line 0 → a → 1.

use super::branch::Segment;
use super::ReducibleData;
use crate::error::{HeunError, Result};
use crate::numerics::quad::adaptive_singular_unit;
use crate::numerics::{GaussJacobi, QuadratureKind, QuadratureRule};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Half-rule agreement required before a Gauss–Jacobi result is accepted.
const GJ_ACCEPT: f64 = 1e-13;
const GJ_MAX_NODES: usize = 512;
const FALLBACK_BUDGET: usize = 400_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    /// φ₁ … φ_K
    pub phi: Vec<C64>,
    /// f₁ … f_K
    pub f: Vec<C64>,
    /// (1/2π)∫|g||ζ|^{k−1}|dζ|, an upper bound for |φ_k|.
    pub scale: Vec<f64>,
    /// Quadrature error estimates per moment.
    pub error: Vec<f64>,
    /// Per-segment unit moments, without the jump coefficients s₁ and −s₃e^{2πiδ}.
    pub unit: [Vec<C64>; 2],
    pub unit_scale: [Vec<f64>; 2],
    pub kind: QuadratureKind,
    pub nodes: usize,
}

impl MomentTable {
    /// A table from raw values, for algebraic checks; scales are |φ_k|.
    pub fn from_values(phi: Vec<C64>, f: Vec<C64>) -> Self {
        let scale = phi.iter().map(|p| p.norm()).collect();
        let k = phi.len();
        MomentTable {
            error: vec![0.0; k],
            unit: [phi.clone(), vec![C64::default(); k]],
            unit_scale: [vec![0.0; k], vec![0.0; k]],
            phi,
            f,
            scale,
            kind: QuadratureKind::GaussJacobi,
            nodes: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }
    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// φ_k, 1-based.
    pub fn phi(&self, k: usize) -> C64 {
        self.phi[k - 1]
    }

    /// H_n = {φ_{i+j−1}}, i,j = 1..n.
    pub fn hankel(&self, n: usize) -> DMatrix<C64> {
        DMatrix::from_fn(n, n, |i, j| self.phi[i + j])
    }

    /// Hadamard bound Π_i ‖row_i‖ of H_n built from the moment scales; bounds |Δ_n|.
    pub fn hankel_scale(&self, n: usize) -> f64 {
        (0..n)
            .map(|i| (0..n).map(|j| self.scale[i + j].powi(2)).sum::<f64>().sqrt())
            .product()
    }

    /// The table for other jump parameters, recombined from the unit moments.
    pub fn recombine(&self, coef: [C64; 2]) -> MomentTable {
        let k = self.len();
        let phi = (0..k).map(|i| coef[0] * self.unit[0][i] + coef[1] * self.unit[1][i]).collect();
        let scale = (0..k)
            .map(|i| coef[0].norm() * self.unit_scale[0][i] + coef[1].norm() * self.unit_scale[1][i])
            .collect();
        MomentTable { phi, scale, ..self.clone() }
    }
}

/// f_k = −(1/k)Σα_jλ_j^k on the poles (0, a, 1).
pub fn f_coefficients(alpha: [C64; 3], a: C64, k: usize) -> Vec<C64> {
    (1..=k).map(|m| -(alpha[1] * a.powi(m as i32) + alpha[2]) / m as f64).collect()
}

type RuleKey = (usize, u64, u64);

fn cached_rule(n: usize, p: f64, q: f64) -> Result<Arc<GaussJacobi>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussJacobi>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, p.to_bits(), q.to_bits());
    if let Some(r) = cache.lock().expect("rule cache").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(GaussJacobi::new(n, p, q)?);
    cache.lock().expect("rule cache").insert(key, rule.clone());
    Ok(rule)
}

struct SegmentMoments {
    val: Vec<C64>,
    abs: Vec<f64>,
    err: Vec<f64>,
    nodes: usize,
}

fn gj_pass(seg: &Segment, k: usize, rule: &GaussJacobi) -> (Vec<C64>, Vec<f64>) {
    let mut val = vec![C64::default(); k];
    let mut abs = vec![0.0; k];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let f = seg.smooth_log(t).exp() * w;
        let z = seg.point(t);
        let (fa, za) = (f.norm(), z.norm());
        let mut zp = C64::new(1.0, 0.0);
        let mut zpa = 1.0;
        for m in 0..k {
            val[m] += f * zp;
            abs[m] += fa * zpa;
            zp *= z;
            zpa *= za;
        }
    }
    (val, abs)
}

fn finish(seg: &Segment, mut m: SegmentMoments) -> SegmentMoments {
    let d = seg.end - seg.start;
    let pre = -d / C64::new(0.0, 2.0 * PI);
    for v in m.val.iter_mut() {
        *v *= pre;
    }
    for (a, e) in m.abs.iter_mut().zip(m.err.iter_mut()) {
        *a *= d.norm() / (2.0 * PI);
        *e *= d.norm() / (2.0 * PI);
    }
    m
}

fn segment_gauss_jacobi(seg: &Segment, k: usize, start_nodes: usize) -> Result<SegmentMoments> {
    let (p, q) = seg.exponents();
    let mut n = start_nodes.max(8);
    loop {
        let (val, abs) = gj_pass(seg, k, &*cached_rule(n, p, q)?);
        let (half, _) = gj_pass(seg, k, &*cached_rule(n / 2, p, q)?);
        let err: Vec<f64> = val.iter().zip(&half).map(|(a, b)| (a - b).norm()).collect();
        if err.iter().zip(&abs).all(|(e, a)| *e <= GJ_ACCEPT * a) {
            return Ok(finish(seg, SegmentMoments { val, abs, err, nodes: n }));
        }
        if n * 2 > GJ_MAX_NODES {
            return Err(HeunError::NonConvergence(format!(
                "Gauss-Jacobi moments not converged at {n} nodes (max error {:e})",
                err.iter().cloned().fold(0.0, f64::max)
            )));
        }
        n *= 2;
    }
}

fn segment_adaptive(seg: &Segment, k: usize, tol: f64, budget: usize) -> Result<SegmentMoments> {
    let (p, q) = seg.exponents();
    let per = budget / (2 * k).max(1);
    let mut m = SegmentMoments { val: vec![], abs: vec![], err: vec![], nodes: budget };
    for j in 0..k {
        let (v, e) = adaptive_singular_unit(|t| seg.smooth_log(t).exp() * seg.point(t).powi(j as i32), p, q, tol, per)?;
        let (a, _) = adaptive_singular_unit(
            |t| C64::new(seg.smooth_log(t).exp().norm() * seg.point(t).norm().powi(j as i32), 0.0),
            p,
            q,
            tol,
            per,
        )?;
        m.val.push(v);
        m.abs.push(a.re);
        m.err.push(e);
    }
    Ok(finish(seg, m))
}

/// φ₁…φ_K by Gauss–Jacobi on each segment, falling back to adaptive Kronrod
/// when the half-rule check fails (complex α, or a close to 0 or 1).
pub fn moments(rd: &ReducibleData, k: usize) -> Result<MomentTable> {
    match moments_with(rd, k, &QuadratureRule::default()) {
        Err(HeunError::NonConvergence(_)) => moments_with(rd, k, &QuadratureRule::adaptive(FALLBACK_BUDGET, 1e-13)),
        r => r,
    }
}

/// φ₁…φ_K with an explicit rule. Gauss–Jacobi uses the budget as the starting
/// node count and doubles it until the half-rule check passes.
pub fn moments_with(rd: &ReducibleData, k: usize, rule: &QuadratureRule) -> Result<MomentTable> {
    if k == 0 {
        return Err(HeunError::InvalidParameters("at least one moment is needed".into()));
    }
    let mut segs = Vec::with_capacity(2);
    for which in 0..2 {
        let seg = Segment::new(rd, which);
        rule.validate(seg.exponents())?;
        segs.push(match rule.kind {
            QuadratureKind::GaussJacobi => segment_gauss_jacobi(&seg, k, rule.node_budget)?,
            QuadratureKind::AdaptiveKronrod => segment_adaptive(&seg, k, rule.tol, rule.node_budget)?,
        });
    }
    let coef = rd.segment_coefficients();
    let nodes = segs.iter().map(|s| s.nodes).max().unwrap_or(0);
    let [s0, s1]: [SegmentMoments; 2] = segs.try_into().ok().expect("two segments");
    let phi = (0..k).map(|i| coef[0] * s0.val[i] + coef[1] * s1.val[i]).collect();
    let scale = (0..k).map(|i| coef[0].norm() * s0.abs[i] + coef[1].norm() * s1.abs[i]).collect();
    let error = (0..k).map(|i| coef[0].norm() * s0.err[i] + coef[1].norm() * s1.err[i]).collect();
    Ok(MomentTable {
        phi,
        f: f_coefficients(rd.alpha, rd.a, k),
        scale,
        error,
        unit: [s0.val, s1.val],
        unit_scale: [s0.abs, s1.abs],
        kind: rule.kind,
        nodes,
    })
}
