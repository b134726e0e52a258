//! Branch bookkeeping for f(λ) = Π(λ−λ_j)^{α_j} cut along 0 → a → 1 → +∞.
//!
//! The factor (λ−λ_j)^{α_j} is cut along the part of the broken line that
//! starts at λ_j, and its argument tends to π on the negative real axis. Its
//! log is the (0,2π) branch with a horizontal cut, corrected by the winding
//! number of the region enclosed between that cut and the true one. Along the
//! jump contour the one-sided values are tracked geometrically instead.

use super::ReducibleData;
use crate::error::{HeunError, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

fn arg0(z: C64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TWO_PI
    } else {
        a
    }
}

fn winding(poly: &[C64], z: C64) -> i64 {
    let n = poly.len();
    let total: f64 = (0..n).map(|i| ((poly[(i + 1) % n] - z) / (poly[i] - z)).arg()).sum();
    (total / TWO_PI).round() as i64
}

/// log (z−λ_j) on the branch cut along λ_j → … → 1 → +∞.
pub(crate) fn factor_log(lams: &[C64; 3], j: usize, z: C64) -> C64 {
    let far = 4.0 * (2.0 + z.norm() + lams.iter().map(|l| l.norm()).fold(0.0, f64::max));
    let mut poly: Vec<C64> = lams[j..].to_vec();
    poly.push(C64::new(far, 0.0));
    poly.push(C64::new(far, lams[j].im));
    let d = z - lams[j];
    C64::new(d.norm().ln(), arg0(d) - TWO_PI * winding(&poly, z) as f64)
}

fn distance_to_segment(z: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = ((z - a) / d).re.clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// log f(λ) for λ off the cut.
pub fn f_log(rd: &ReducibleData, lam: C64) -> Result<C64> {
    let l = rd.lambdas();
    let scale = 1.0 + lam.norm();
    let on_cut = distance_to_segment(lam, l[0], l[1]) < 1e-15 * scale
        || distance_to_segment(lam, l[1], l[2]) < 1e-15 * scale
        || (lam.im.abs() < 1e-15 * scale && lam.re >= 1.0);
    if on_cut {
        return Err(HeunError::InvalidParameters(format!("{lam} lies on the cut of f")));
    }
    Ok((0..3).map(|j| rd.alpha[j] * factor_log(&l, j, lam)).sum())
}

/// One-sided arguments [θ₊, θ₋] of (z−λ_j) on piece s of the broken line, at
/// its far end. Walks back from +∞ along the two banks (θ₊ = 0 and θ₋ = 2π
/// above and below the final ray), adding the angle swept along each piece
/// and the turn around λ_j itself; the "+" bank is the left one.
fn bank_args(v: &[C64; 3], j: usize, s: usize) -> [f64; 2] {
    let dir = |k: usize| if k == 2 { C64::new(1.0, 0.0) } else { v[k + 1] - v[k] };
    let mut th = [0.0, TWO_PI];
    for k in (s + 1..=2).rev() {
        let inc = if k == j || k + 1 == j {
            0.0
        } else if k == 2 {
            (v[2] - v[j]).arg()
        } else {
            ((v[k] - v[j]) / (v[k + 1] - v[j])).arg()
        };
        th[0] += inc;
        th[1] += inc;
        if k == j {
            let sweep = arg0(-dir(k - 1) / dir(k));
            th[0] += sweep;
            th[1] += sweep - TWO_PI;
        }
    }
    th
}

/// One segment of the jump contour with the one-sided arguments frozen at its far end.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    pub start: C64,
    pub end: C64,
    /// θ₊ + θ₋ for the factors at start, end and away from the segment.
    theta: [f64; 3],
    other: C64,
    pub alpha: [C64; 3],
    pub coef: C64,
}

impl Segment {
    /// Segment 0 is (λ₁,λ₂), segment 1 is (λ₂,λ₃).
    pub fn new(rd: &ReducibleData, which: usize) -> Segment {
        let l = rd.lambdas();
        let idx = if which == 0 { [0, 1, 2] } else { [1, 2, 0] };
        let theta = idx.map(|j| {
            let [p, m] = bank_args(&l, j, which);
            p + m
        });
        let alpha = idx.map(|j| rd.alpha[j]);
        Segment { start: l[idx[0]], end: l[idx[1]], theta, other: l[idx[2]], alpha, coef: rd.segment_coefficients()[which] }
    }

    pub fn point(&self, t: f64) -> C64 {
        self.start + (self.end - self.start) * t
    }

    /// Endpoint exponents (2Re α_start, 2Re α_end) used by Gauss–Jacobi.
    pub fn exponents(&self) -> (f64, f64) {
        (2.0 * self.alpha[0].re, 2.0 * self.alpha[1].re)
    }

    /// log(f₊f₋) at λ(t) minus p·ln t + q·ln(1−t), (p,q) the real endpoint exponents.
    pub fn smooth_log(&self, t: f64) -> C64 {
        let i = C64::new(0.0, 1.0);
        let len_ln = (self.end - self.start).norm().ln();
        let lam = self.point(t);
        let [aa, ab, ao] = self.alpha;
        let mut s = aa * (2.0 * len_ln + i * self.theta[0]) + ab * (2.0 * len_ln + i * self.theta[1]);
        if aa.im != 0.0 {
            s += i * (2.0 * aa.im * t.ln());
        }
        if ab.im != 0.0 {
            s += i * (2.0 * ab.im * (1.0 - t).ln());
        }
        let other = self.other;
        let rel = (lam - other) / (self.end - other);
        s + ao * (2.0 * (lam - other).norm().ln() + i * (self.theta[2] + 2.0 * rel.arg()))
    }

    /// f₊f₋ at λ(t), without the jump coefficient.
    pub fn f_plus_minus(&self, t: f64) -> C64 {
        let (p, q) = self.exponents();
        self.smooth_log(t).exp() * t.powf(p) * (1.0 - t).powf(q)
    }
}

fn locate(rd: &ReducibleData, lam: C64) -> Result<(Segment, f64)> {
    let l = rd.lambdas();
    let scale = 1.0 + lam.norm();
    for (j, lj) in l.iter().enumerate() {
        if (lam - lj).norm() <= 1e-12 * scale {
            return Err(HeunError::OnCutEndpoint(format!("lambda_{} = {lj}", j + 1)));
        }
    }
    for which in 0..2 {
        let seg = Segment::new(rd, which);
        let d = seg.end - seg.start;
        let t = (lam - seg.start) / d;
        if t.re > 0.0 && t.re < 1.0 && t.im.abs() * d.norm() <= 1e-12 * scale {
            return Ok((seg, t.re));
        }
    }
    Err(HeunError::InvalidParameters(format!("{lam} is not on (0, a) or (a, 1)")))
}

/// f₊(λ)f₋(λ) for λ on (λ₁,λ₂)∪(λ₂,λ₃).
pub fn f_plus_minus(rd: &ReducibleData, lam: C64) -> Result<C64> {
    let (seg, t) = locate(rd, lam)?;
    Ok(seg.f_plus_minus(t))
}

/// Jump weight g(λ): s₁f₊f₋ on (λ₁,λ₂) and −s₃e^{2πiδ}f₊f₋ on (λ₂,λ₃).
pub fn weight(rd: &ReducibleData, lam: C64) -> Result<C64> {
    let (seg, t) = locate(rd, lam)?;
    Ok(seg.coef * seg.f_plus_minus(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    fn quarter() -> ReducibleData {
        ReducibleData::new([c(0.25); 3], 0, c(0.5), c(1.0), c(1.0)).unwrap()
    }

    #[test]
    fn one_sided_limits_match_closed_form() {
        let rd = quarter();
        let lam = c(0.25);
        let eps = C64::new(0.0, 1e-13);
        let from_limits = (f_log(&rd, lam + eps).unwrap() + f_log(&rd, lam - eps).unwrap()).exp();
        // On (0, 1/2) with real a: e^{2πiΣα}|λ|^{1/2}|λ−1/2|^{1/2}|λ−1|^{1/2}.
        let modulus = (0.25f64 * 0.25 * 0.75).sqrt();
        let closed = C64::from_polar(modulus, 2.0 * PI * 0.75);
        let seg = f_plus_minus(&rd, lam).unwrap();
        assert!((from_limits - closed).norm() < 1e-12, "{from_limits} vs {closed}");
        assert!((seg - closed).norm() < 1e-12, "{seg} vs {closed}");
    }

    #[test]
    fn segment_branch_matches_limits_for_complex_a() {
        let rd = ReducibleData::new([c(0.1), c(0.3), c(0.2)], 1, C64::new(0.4, 0.35), c(1.0), c(0.7)).unwrap();
        for which in 0..2 {
            let seg = Segment::new(&rd, which);
            let d = seg.end - seg.start;
            for &t in &[0.07, 0.3, 0.5, 0.81, 0.97] {
                let lam = seg.point(t);
                let off = C64::new(0.0, 1.0) * d / d.norm() * 1e-11;
                let lim = (f_log(&rd, lam + off).unwrap() + f_log(&rd, lam - off).unwrap()).exp();
                let v = seg.f_plus_minus(t);
                assert!((lim - v).norm() < 1e-9 * v.norm(), "seg {which} t {t}: {lim} vs {v}");
            }
        }
    }

    #[test]
    fn infinity_branch() {
        // f ~ λ^{Σα} with arg λ = π on the negative axis.
        let rd = ReducibleData::new([c(0.1), c(0.2), c(0.15)], 1, C64::new(0.5, 0.2), c(1.0), c(1.0)).unwrap();
        let lam = c(-1e6);
        let expect = 0.45 * C64::new(1e6f64.ln(), PI);
        assert!((f_log(&rd, lam).unwrap() - expect).norm() < 1e-6);
    }

    #[test]
    fn zero_s1_kills_first_segment() {
        let rd = ReducibleData::new([c(0.25); 3], 0, c(0.5), c(0.0), c(1.0)).unwrap();
        assert_eq!(weight(&rd, c(0.2)).unwrap(), C64::default());
        assert!(weight(&rd, c(0.7)).unwrap().norm() > 0.0);
    }

    #[test]
    fn phase_jump_across_a() {
        let rd = quarter();
        // |f₊f₋| is symmetric about 1/2 for equal exponents.
        let g1 = weight(&rd, c(0.2)).unwrap();
        let g2 = weight(&rd, c(0.8)).unwrap();
        let expect = -rd.s[2] * C64::new(0.0, 2.0 * PI * rd.delta.re).exp() / rd.s[0];
        assert!((g2 / g1 - expect).norm() < 1e-12, "{} vs {expect}", g2 / g1);
    }

    #[test]
    fn endpoints_rejected() {
        let rd = quarter();
        for l in [c(0.0), c(0.5), c(1.0)] {
            assert!(matches!(weight(&rd, l), Err(HeunError::OnCutEndpoint(_))));
        }
        assert!(matches!(weight(&rd, C64::new(0.3, 0.1)), Err(HeunError::InvalidParameters(_))));
    }
}
