use crate::error::{HeunError, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Line { from: C64, to: C64 },
    /// Arc from angle `theta0` sweeping by `sweep` radians (positive = counterclockwise).
    Arc { center: C64, radius: f64, theta0: f64, sweep: f64 },
}

impl Piece {
    pub fn start(&self) -> C64 {
        self.point(0.0)
    }
    pub fn end(&self) -> C64 {
        self.point(1.0)
    }
    /// Point at parameter s ∈ [0,1].
    pub fn point(&self, s: f64) -> C64 {
        match *self {
            Piece::Line { from, to } => from + (to - from) * s,
            Piece::Arc { center, radius, theta0, sweep } => center + C64::from_polar(radius, theta0 + sweep * s),
        }
    }
    /// dλ/ds
    pub fn tangent(&self, s: f64) -> C64 {
        match *self {
            Piece::Line { from, to } => to - from,
            Piece::Arc { radius, theta0, sweep, .. } => {
                C64::new(0.0, sweep) * C64::from_polar(radius, theta0 + sweep * s)
            }
        }
    }
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => (to - from).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }
    /// Distance from `z` to the piece.
    pub fn distance_to(&self, z: C64) -> f64 {
        match *self {
            Piece::Line { from, to } => {
                let d = to - from;
                let l2 = d.norm_sqr();
                if l2 == 0.0 {
                    return (z - from).norm();
                }
                let t = (((z - from) * d.conj()).re / l2).clamp(0.0, 1.0);
                (from + d * t - z).norm()
            }
            Piece::Arc { center, radius, theta0, sweep } => {
                let w = z - center;
                let ang = w.arg();
                let (lo, len) = if sweep >= 0.0 { (theta0, sweep) } else { (theta0 + sweep, -sweep) };
                let rel = (ang - lo).rem_euclid(2.0 * PI);
                if len >= 2.0 * PI || rel <= len {
                    (w.norm() - radius).abs()
                } else {
                    (self.start() - z).norm().min((self.end() - z).norm())
                }
            }
        }
    }
}

/// Ordered sequence of pieces with a declared singularity set and clearance radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPath {
    pub pieces: Vec<Piece>,
    pub singularities: Vec<C64>,
    pub clearance: f64,
}

impl ContourPath {
    pub fn new(singularities: Vec<C64>, clearance: f64) -> Self {
        ContourPath { pieces: vec![], singularities, clearance }
    }
    pub fn line(from: C64, to: C64) -> Self {
        ContourPath { pieces: vec![Piece::Line { from, to }], singularities: vec![], clearance: 0.0 }
    }
    pub fn circle(center: C64, radius: f64, theta0: f64, turns: f64) -> Self {
        ContourPath {
            pieces: vec![Piece::Arc { center, radius, theta0, sweep: 2.0 * PI * turns }],
            singularities: vec![],
            clearance: 0.0,
        }
    }
    pub fn with_singularities(mut self, singularities: Vec<C64>, clearance: f64) -> Self {
        self.singularities = singularities;
        self.clearance = clearance;
        self
    }
    pub fn push(&mut self, p: Piece) {
        self.pieces.push(p);
    }
    pub fn line_to(mut self, to: C64) -> Self {
        let from = self.end().expect("line_to on an empty path");
        self.pieces.push(Piece::Line { from, to });
        self
    }
    pub fn start(&self) -> Option<C64> {
        self.pieces.first().map(|p| p.start())
    }
    pub fn end(&self) -> Option<C64> {
        self.pieces.last().map(|p| p.end())
    }
    /// Concatenation: traverse `self`, then `o`.
    pub fn then(&self, o: &ContourPath) -> ContourPath {
        let mut pieces = self.pieces.clone();
        pieces.extend(o.pieces.iter().copied());
        let mut s = self.singularities.clone();
        for z in &o.singularities {
            if !s.contains(z) {
                s.push(*z);
            }
        }
        ContourPath { pieces, singularities: s, clearance: self.clearance.max(o.clearance) }
    }
    pub fn reversed(&self) -> ContourPath {
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|p| match *p {
                Piece::Line { from, to } => Piece::Line { from: to, to: from },
                Piece::Arc { center, radius, theta0, sweep } => Piece::Arc { center, radius, theta0: theta0 + sweep, sweep: -sweep },
            })
            .collect();
        ContourPath { pieces, singularities: self.singularities.clone(), clearance: self.clearance }
    }
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }
    /// Minimum distance from the path to the declared singularities.
    pub fn min_distance(&self) -> f64 {
        self.singularities
            .iter()
            .flat_map(|&z| self.pieces.iter().map(move |p| p.distance_to(z)))
            .fold(f64::INFINITY, f64::min)
    }
    /// Checks continuity and clearance.
    pub fn validate(&self) -> Result<()> {
        for w in self.pieces.windows(2) {
            let gap = (w[0].end() - w[1].start()).norm();
            if gap > 1e-12 * (1.0 + w[0].end().norm()) {
                return Err(HeunError::InvalidParameters(format!("path pieces do not join (gap {gap:e})")));
            }
        }
        for &z in &self.singularities {
            for p in &self.pieces {
                if p.distance_to(z) <= self.clearance.max(0.0) {
                    return Err(HeunError::SingularityHit(format!("{z}")));
                }
            }
        }
        Ok(())
    }
    /// Winding number of a closed path around `z`.
    pub fn winding_number(&self, z: C64) -> f64 {
        let mut total = 0.0;
        for p in &self.pieces {
            let n = 64;
            let mut prev = p.point(0.0) - z;
            for k in 1..=n {
                let cur = p.point(k as f64 / n as f64) - z;
                total += (cur / prev).arg();
                prev = cur;
            }
        }
        total / (2.0 * PI)
    }
}
