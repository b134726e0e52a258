//! Heun-polynomial loci: roots of Δ_{n+1} in the position a, or in the ratio
//! s₃/s₁ at fixed a.

use super::hankel::{build_heun_polynomial, solve_rn, LOCUS_TOL};
use super::moments::{moments, MomentTable};
use super::ReducibleData;
use crate::error::{HeunError, Result};
use crate::heun_reduction::{ghe_residual, HeunCanonicalGHE, HeunParameters};
use crate::numerics::linalg::det_rcond;
use crate::numerics::{thread_pool, ComplexPoly};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// |Δ_{n+1}| / Hadamard bound accepted at a root.
pub const ROOT_CERT_TOL: f64 = LOCUS_TOL;
/// GHE residual of π_n accepted at a root.
pub const RESIDUAL_CERT_TOL: f64 = 1e-8;
const DEDUP: f64 = 1e-8;
const NEWTON_ITERS: usize = 40;

/// Rectangle [re₀,re₁]×[im₀,im₁] of the a-plane with a grid×grid seed lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchRegion {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub grid: usize,
}

impl Default for SearchRegion {
    fn default() -> Self {
        SearchRegion { re: [0.1, 0.9], im: [-0.4, 0.4], grid: 41 }
    }
}

impl SearchRegion {
    pub fn validate(&self) -> Result<()> {
        let ok = self.grid >= 3 && self.re[0] < self.re[1] && self.im[0] < self.im[1];
        if !ok {
            return Err(HeunError::InvalidParameters(format!("bad search region {self:?}")));
        }
        for p in [0.0, 1.0] {
            if self.contains(C64::new(p, 0.0), 1e-6) {
                return Err(HeunError::InvalidParameters(format!("search region contains the singular point {p}")));
            }
        }
        Ok(())
    }

    fn contains(&self, z: C64, margin: f64) -> bool {
        z.re >= self.re[0] - margin && z.re <= self.re[1] + margin && z.im >= self.im[0] - margin && z.im <= self.im[1] + margin
    }

    fn step(&self) -> (f64, f64) {
        let g = (self.grid - 1) as f64;
        ((self.re[1] - self.re[0]) / g, (self.im[1] - self.im[0]) / g)
    }

    /// Grid points, row by row with Im a ascending and Re a ascending within a row.
    pub fn points(&self) -> Vec<C64> {
        let (dr, di) = self.step();
        let g = self.grid;
        (0..g * g)
            .map(|k| C64::new(self.re[0] + dr * (k % g) as f64, self.im[0] + di * (k / g) as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusRoot {
    pub a: C64,
    pub s: [C64; 3],
    pub delta_n: C64,
    pub delta_n1: C64,
    /// |Δ_{n+1}| over its Hadamard bound.
    pub defect: f64,
    pub newton_steps: usize,
    /// GHE residual of π_n on |λ| = 5.
    pub residual: f64,
    /// Coefficients of π_n, constant term first.
    pub polynomial: Vec<C64>,
    pub heun: HeunParameters,
    pub canonical: HeunCanonicalGHE,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusReport {
    pub n: usize,
    pub region: SearchRegion,
    /// (a, Δ_{n+1}(a)) on the grid; NaN where the geometry is invalid.
    pub scan: Vec<(C64, C64)>,
    pub seeds: usize,
    pub roots: Vec<LocusRoot>,
}

fn hankel_det_at(rd: &ReducibleData, a: C64) -> Result<(C64, f64)> {
    let rda = rd.with_position(a)?;
    let m = rd.n + 1;
    let mt = moments(&rda, 2 * m - 1)?;
    Ok(det_and_scale(&mt, m))
}

fn det_and_scale(mt: &MomentTable, m: usize) -> (C64, f64) {
    (det_rcond(&mt.hankel(m)).0, mt.hankel_scale(m))
}

/// Δ_{n+1}(a) for every grid point, in grid order.
pub fn scan_hankel_det(rd: &ReducibleData, region: &SearchRegion) -> Result<Vec<(C64, C64)>> {
    region.validate()?;
    let pts = region.points();
    let nan = C64::new(f64::NAN, f64::NAN);
    Ok(thread_pool().install(|| {
        pts.par_iter()
            .map(|&a| (a, hankel_det_at(rd, a).map(|d| d.0).unwrap_or(nan)))
            .collect()
    }))
}

/// Fixed evaluation points on |λ| = 5 (golden-angle sequence).
pub fn residual_points() -> Vec<C64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    (0..50).map(|k| C64::from_polar(5.0, 2.0 * PI * ((0.5 + k as f64 * g) % 1.0))).collect()
}

/// max over the residual points of |u″+Pu′+Qu| / max(1, |u″|+|Pu′|+|Qu|).
pub fn heun_polynomial_residual(u: &ComplexPoly, ghe: &HeunCanonicalGHE) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for lam in residual_points() {
        let (v, d1, d2) = u.eval3(lam);
        let (p, q) = ghe.coefficients(lam)?;
        let r = ghe_residual(u, ghe, lam)?;
        let size = d2.norm() + (p * d1).norm() + (q * v).norm();
        worst = worst.max(r.norm() / size.max(1.0));
    }
    Ok(worst)
}

fn certify(rd: &ReducibleData, steps: usize) -> Result<LocusRoot> {
    let mt = moments(rd, 2 * rd.n + 2)?;
    let sol = solve_rn(&mt, rd.n)?;
    let (u, hp) = build_heun_polynomial(&sol, rd)?;
    let canonical = hp.canonical();
    let residual = heun_polynomial_residual(&u, &canonical)?;
    if residual > RESIDUAL_CERT_TOL {
        return Err(HeunError::NotAtLocus(format!("GHE residual {residual:e}")));
    }
    Ok(LocusRoot {
        a: rd.a,
        s: rd.s,
        delta_n: sol.delta_n,
        delta_n1: sol.delta_n1,
        defect: sol.locus_defect(),
        newton_steps: steps,
        residual,
        polynomial: u.coeffs.clone(),
        heun: hp,
        canonical,
    })
}

fn newton_in_a(rd: &ReducibleData, a0: C64, region: &SearchRegion) -> Option<(C64, usize)> {
    let (dr, di) = region.step();
    let margin = dr.max(di);
    let mut a = a0;
    for it in 1..=NEWTON_ITERS {
        let (d, _) = hankel_det_at(rd, a).ok()?;
        // Δ_{n+1} is holomorphic in a; a centred difference along the real direction is enough.
        let h = 1e-6 * (1.0 + a.norm());
        let dp = (hankel_det_at(rd, a + h).ok()?.0 - hankel_det_at(rd, a - h).ok()?.0) / (2.0 * h);
        if dp.norm() == 0.0 || !dp.re.is_finite() {
            return None;
        }
        let step = d / dp;
        a -= step;
        if !region.contains(a, margin) {
            return None;
        }
        if step.norm() < 1e-14 * (1.0 + a.norm()) {
            return Some((a, it));
        }
    }
    Some((a, NEWTON_ITERS))
}

fn seeds(region: &SearchRegion, scan: &[(C64, C64)]) -> Vec<C64> {
    let g = region.grid as i64;
    let val = |i: i64, j: i64| -> Option<f64> {
        if i < 0 || j < 0 || i >= g || j >= g {
            return None;
        }
        let v = scan[(j * g + i) as usize].1.norm();
        v.is_finite().then_some(v)
    };
    let mut out = vec![];
    for j in 0..g {
        for i in 0..g {
            let Some(v) = val(i, j) else { continue };
            let mut is_min = true;
            for (di, dj) in [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)] {
                if let Some(w) = val(i + di, j + dj) {
                    if w <= v {
                        is_min = false;
                    }
                }
            }
            if is_min {
                out.push(scan[(j * g + i) as usize].0);
            }
        }
    }
    out
}

fn dedup_sorted(mut roots: Vec<LocusRoot>, key: impl Fn(&LocusRoot) -> C64) -> Vec<LocusRoot> {
    let mut out: Vec<LocusRoot> = vec![];
    for r in roots.drain(..) {
        if !out.iter().any(|o| (key(o) - key(&r)).norm() < DEDUP * (1.0 + key(&r).norm())) {
            out.push(r);
        }
    }
    out.sort_by(|x, y| {
        let (a, b) = (key(x), key(y));
        a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
    });
    out
}

/// Newton from every local minimum of |Δ_{n+1}| on the scan, then certification.
pub fn locate_roots(rd: &ReducibleData, region: &SearchRegion, scan: &[(C64, C64)]) -> (usize, Vec<LocusRoot>) {
    let seeds = seeds(region, scan);
    let found: Vec<Option<LocusRoot>> = thread_pool().install(|| {
        seeds
            .par_iter()
            .map(|&a0| {
                let (a, steps) = newton_in_a(rd, a0, region)?;
                if !region.contains(a, 0.0) {
                    return None;
                }
                certify(&rd.with_position(a).ok()?, steps).ok()
            })
            .collect()
    });
    (seeds.len(), dedup_sorted(found.into_iter().flatten().collect(), |r| r.a))
}

/// Roots a* of Δ_{n+1}(a) = 0 in the region, each certified by |Δ_{n+1}| and
/// the GHE residual of π_n. The position stored in `rd` is ignored.
pub fn heun_locus(rd: &ReducibleData, region: &SearchRegion) -> Result<LocusReport> {
    let scan = scan_hankel_det(rd, region)?;
    let (seeds, roots) = locate_roots(rd, region, &scan);
    if roots.is_empty() {
        return Err(HeunError::NoRootInRegion);
    }
    Ok(LocusReport { n: rd.n, region: *region, scan, seeds, roots })
}

/// Roots of Δ_{n+1} in r = s₃ at fixed a and s₁. Δ_{n+1} is a polynomial of
/// degree n+1 in r; its coefficients come from n+2 samples on a circle.
pub fn heun_locus_ratio(rd: &ReducibleData) -> Result<Vec<LocusRoot>> {
    let m = rd.n + 1;
    let unit = moments(rd, 2 * m)?;
    let e = (C64::new(0.0, 2.0 * PI) * rd.delta).exp();
    let s1 = rd.s[0];
    if s1.norm() == 0.0 {
        return Err(HeunError::InvalidParameters("ratio mode needs s1 != 0".into()));
    }
    let us0: f64 = unit.unit_scale[0].iter().sum();
    let us1: f64 = unit.unit_scale[1].iter().sum();
    let rho = if us1 > 0.0 { s1.norm() * us0 / us1 } else { 1.0 };
    let npts = m + 1;
    let w = |j: usize| C64::from_polar(1.0, 2.0 * PI * j as f64 / npts as f64);
    let vals: Vec<C64> = (0..npts)
        .map(|j| det_and_scale(&unit.recombine([s1, -(w(j) * rho) * e]), m).0)
        .collect();
    let coeffs: Vec<C64> = (0..npts)
        .map(|k| {
            let c: C64 = (0..npts).map(|j| vals[j] * w((npts - k * j % npts) % npts)).sum();
            c / npts as f64 / rho.powi(k as i32)
        })
        .collect();
    let poly = ComplexPoly::new(coeffs);
    let roots: Vec<LocusRoot> = poly
        .roots()
        .into_iter()
        .filter_map(|r| certify(&rd.with_s3(r).ok()?, 0).ok())
        .collect();
    if roots.is_empty() {
        return Err(HeunError::NoRootInRegion);
    }
    Ok(dedup_sorted(roots, |r| r.s[2]))
}
