use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMat2 {
    pub m: [[C64; 2]; 2],
}

const O: C64 = C64 { re: 0.0, im: 0.0 };
const L: C64 = C64 { re: 1.0, im: 0.0 };

impl ComplexMat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        ComplexMat2 { m: [[a, b], [c, d]] }
    }
    pub const fn zero() -> Self {
        Self::new(O, O, O, O)
    }
    pub const fn identity() -> Self {
        Self::new(L, O, O, L)
    }
    pub const fn sigma3() -> Self {
        Self::new(L, O, O, C64 { re: -1.0, im: 0.0 })
    }
    pub const fn sigma_plus() -> Self {
        Self::new(O, L, O, O)
    }
    pub const fn sigma_minus() -> Self {
        Self::new(O, O, L, O)
    }
    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, O, O, d)
    }
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn a(&self) -> C64 {
        self.m[0][0]
    }
    pub fn b(&self) -> C64 {
        self.m[0][1]
    }
    pub fn c(&self) -> C64 {
        self.m[1][0]
    }
    pub fn d(&self) -> C64 {
        self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }
    /// Adjugate; equals the inverse when det = 1.
    pub fn adj(&self) -> Self {
        Self::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }
    pub fn inv(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adj().scale(d.inv()))
    }
    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }
    pub fn commutator(&self, o: &Self) -> Self {
        *self * *o - *o * *self
    }
    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
    /// Max-abs entry norm.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_finite())
    }
    /// Eigenvalues of a 2×2 matrix, ordered so that the first has the larger real part.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let t = self.trace() * 0.5;
        let disc = (t * t - self.det()).sqrt();
        let (e1, e2) = (t + disc, t - disc);
        if e1.re >= e2.re {
            (e1, e2)
        } else {
            (e2, e1)
        }
    }
    /// exp(θ·σ₃)
    pub fn exp_sigma3(theta: C64) -> Self {
        Self::diag(theta.exp(), (-theta).exp())
    }
    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }
    pub fn distance(&self, o: &Self) -> f64 {
        (*self - *o).norm()
    }
    pub fn to_pairs(&self) -> [[[f64; 2]; 2]; 2] {
        let p = |z: C64| [z.re, z.im];
        [[p(self.m[0][0]), p(self.m[0][1])], [p(self.m[1][0]), p(self.m[1][1])]]
    }
}

impl Default for ComplexMat2 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for ComplexMat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl AddAssign for ComplexMat2 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for ComplexMat2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ComplexMat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl Mul for ComplexMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<C64> for ComplexMat2 {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for ComplexMat2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale_re(s)
    }
}

impl std::iter::Sum for ComplexMat2 {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn arb_mat() -> impl Strategy<Value = ComplexMat2> {
        proptest::collection::vec(-3.0f64..3.0, 8).prop_map(|v| {
            ComplexMat2::new(c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5]), c(v[6], v[7]))
        })
    }

    #[test]
    fn generators() {
        let s3 = ComplexMat2::sigma3();
        let sp = ComplexMat2::sigma_plus();
        let sm = ComplexMat2::sigma_minus();
        assert_eq!(s3.commutator(&sp), sp * c(2.0, 0.0));
        assert_eq!(s3.commutator(&sm), sm * c(-2.0, 0.0));
        assert_eq!(sp.commutator(&sm), s3);
        assert_eq!(s3.det(), c(-1.0, 0.0));
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = ComplexMat2::diag(c(0.3, 0.0), c(-0.3, 0.0));
        let (a, b) = m.eigenvalues();
        assert!((a - c(0.3, 0.0)).norm() < 1e-15);
        assert!((b + c(0.3, 0.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn det_multiplicative(a in arb_mat(), b in arb_mat()) {
            let lhs = (a * b).det();
            let rhs = a.det() * b.det();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm() + a.norm() * a.norm() * b.norm() * b.norm()));
        }

        #[test]
        fn associative(a in arb_mat(), b in arb_mat(), d in arb_mat()) {
            let l = (a * b) * d;
            let r = a * (b * d);
            prop_assert!(l.distance(&r) <= 1e-12 * (1.0 + a.norm() * b.norm() * d.norm()));
        }

        #[test]
        fn inverse_roundtrip(a in arb_mat()) {
            prop_assume!(a.det().norm() > 1e-3);
            let i = a * a.inv().unwrap();
            prop_assert!(i.distance(&ComplexMat2::identity()) < 1e-9 * (1.0 + a.norm() * a.norm() / a.det().norm()));
        }
    }
}
