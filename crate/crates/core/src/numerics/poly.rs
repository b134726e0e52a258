use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Polynomial with complex coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    pub coeffs: Vec<C64>,
}

impl ComplexPoly {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = ComplexPoly { coeffs };
        p.trim();
        p
    }
    pub fn zero() -> Self {
        ComplexPoly { coeffs: vec![] }
    }
    pub fn one() -> Self {
        ComplexPoly { coeffs: vec![C64::new(1.0, 0.0)] }
    }
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); k + 1];
        c[k] = C64::new(1.0, 0.0);
        ComplexPoly { coeffs: c }
    }
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul(&ComplexPoly::new(vec![-r, C64::new(1.0, 0.0)]));
        }
        p
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if *last == C64::new(0.0, 0.0) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
    /// Value, first and second derivative by a single Horner pass.
    pub fn eval3(&self, z: C64) -> (C64, C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = p;
        let mut ddp = p;
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * z + dp * 2.0;
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp, ddp)
    }
    pub fn derivative(&self) -> Self {
        ComplexPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }
    pub fn scale(&self, s: C64) -> Self {
        ComplexPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }

    /// All roots by Aberth–Ehrlich iteration.
    pub fn roots(&self) -> Vec<C64> {
        let n = match self.degree() {
            Some(0) | None => return vec![],
            Some(n) => n,
        };
        let lead = self.leading();
        let monic = self.scale(lead.inv());
        let radius = 1.0
            + monic.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
        let mut z: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
            .collect();
        let dp = monic.derivative();
        for _ in 0..500 {
            let mut max_step: f64 = 0.0;
            for i in 0..n {
                let p = monic.eval(z[i]);
                if p == C64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = p / dp.eval(z[i]);
                let s: C64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
            if max_step < 1e-15 {
                break;
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn degree_and_trim() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(ComplexPoly::zero().degree(), None);
    }

    #[test]
    fn eval3_matches_derivatives() {
        let p = ComplexPoly::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(2.0, -1.0)]);
        let z = c(0.7, -0.3);
        let (v, d, dd) = p.eval3(z);
        assert!((v - p.eval(z)).norm() < 1e-14);
        assert!((d - p.derivative().eval(z)).norm() < 1e-14);
        assert!((dd - p.derivative().derivative().eval(z)).norm() < 1e-13);
    }

    #[test]
    fn roots_of_product() {
        let r = [c(1.0, 0.0), c(-2.0, 0.5), c(0.3, -1.0)];
        let p = ComplexPoly::from_roots(&r);
        let mut found = p.roots();
        for root in r {
            let (k, d) = found
                .iter()
                .enumerate()
                .map(|(k, z)| (k, (*z - root).norm()))
                .fold((0, f64::MAX), |a, b| if b.1 < a.1 { b } else { a });
            assert!(d < 1e-12, "root {root} missed by {d}");
            found.remove(k);
        }
    }

    proptest! {
        #[test]
        fn mul_evaluates_pointwise(a in proptest::collection::vec(-2.0f64..2.0, 1..6),
                                   b in proptest::collection::vec(-2.0f64..2.0, 1..6),
                                   x in -1.5f64..1.5, y in -1.5f64..1.5) {
            let pa = ComplexPoly::new(a.iter().map(|&v| c(v, 0.5 * v)).collect());
            let pb = ComplexPoly::new(b.iter().map(|&v| c(-v, v)).collect());
            let z = c(x, y);
            let lhs = pa.mul(&pb).eval(z);
            let rhs = pa.eval(z) * pb.eval(z);
            prop_assert!((lhs - rhs).norm() <= 1e-11 * (1.0 + rhs.norm()) * 50.0);
        }
    }
}
