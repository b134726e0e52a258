//! Double-double real and complex arithmetic (~32 significant digits), used where
//! residuals far below the size of individual terms must be resolved.

use num_complex::Complex64 as C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const fn new(hi: f64) -> Self {
        DD { hi, lo: 0.0 }
    }
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DD {
    fn from(v: f64) -> Self {
        DD::new(v)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        self + (-o)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self - o * DD::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DD::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::new(q3)
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DDC {
    pub re: DD,
    pub im: DD,
}

impl DDC {
    pub fn new(re: DD, im: DD) -> Self {
        DDC { re, im }
    }
    pub fn real(v: f64) -> Self {
        DDC { re: DD::new(v), im: DD::new(0.0) }
    }
    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
    pub fn powi(self, n: i32) -> DDC {
        if n < 0 {
            return DDC::real(1.0) / self.powi(-n);
        }
        let mut acc = DDC::real(1.0);
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
}

impl From<C64> for DDC {
    fn from(z: C64) -> Self {
        DDC { re: DD::new(z.re), im: DD::new(z.im) }
    }
}

impl Add for DDC {
    type Output = DDC;
    fn add(self, o: DDC) -> DDC {
        DDC { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for DDC {
    type Output = DDC;
    fn sub(self, o: DDC) -> DDC {
        DDC { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for DDC {
    type Output = DDC;
    fn neg(self) -> DDC {
        DDC { re: -self.re, im: -self.im }
    }
}

impl Mul for DDC {
    type Output = DDC;
    fn mul(self, o: DDC) -> DDC {
        DDC {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for DDC {
    type Output = DDC;
    fn div(self, o: DDC) -> DDC {
        let den = o.re * o.re + o.im * o.im;
        let num = self * DDC { re: o.re, im: -o.im };
        DDC { re: num.re / den, im: num.im / den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_below_f64_epsilon() {
        let one = DD::new(1.0);
        let tiny = DD::new(1e-20);
        let s = (one + tiny) - one;
        assert!((s.to_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn division_roundtrip() {
        let a = DD::new(1.0) / DD::new(3.0);
        let back = a * DD::new(3.0) - DD::new(1.0);
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = DDC::from(C64::new(0.3, -1.7));
        let b = DDC::from(C64::new(-2.1, 0.4));
        let r = (a / b) * b - a;
        assert!(r.to_c64().norm() < 1e-30);
    }

    #[test]
    fn powi_negative() {
        let z = DDC::from(C64::new(0.5, 0.5));
        let r = z.powi(-3) * z.powi(3) - DDC::real(1.0);
        assert!(r.to_c64().norm() < 1e-30);
    }
}
