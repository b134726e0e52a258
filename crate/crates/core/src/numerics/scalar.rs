//! Field abstraction over complex f64 and complex double-double, so that the
//! same formulas can be evaluated at either precision.

use super::dd::DDC;
use num_complex::Complex64 as C64;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_c64(z: C64) -> Self;
    fn to_c64(self) -> C64;

    fn from_f64(v: f64) -> Self {
        Self::from_c64(C64::new(v, 0.0))
    }
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    /// |z| to f64 accuracy.
    fn magnitude(self) -> f64 {
        self.to_c64().norm()
    }
    fn powi(self, n: i32) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut acc = Self::one();
        let mut base = self;
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }
    fn scale(self, s: f64) -> Self {
        self * Self::from_f64(s)
    }
}

impl Scalar for C64 {
    fn from_c64(z: C64) -> Self {
        z
    }
    fn to_c64(self) -> C64 {
        self
    }
    fn from_f64(v: f64) -> Self {
        C64::new(v, 0.0)
    }
    fn powi(self, n: i32) -> Self {
        C64::powi(&self, n)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for DDC {
    fn from_c64(z: C64) -> Self {
        DDC::from(z)
    }
    fn to_c64(self) -> C64 {
        DDC::to_c64(self)
    }
}
