//! Truncated Laurent series in one variable with exact bookkeeping of the
//! order up to which coefficients are known.

use super::scalar::Scalar;
use num_complex::Complex64 as C64;

/// Marks a series whose stored coefficients are exact (a polynomial).
pub const EXACT: i32 = i32::MAX / 4;

/// Σ coeffs[i]·h^(val+i), known for all orders < prec. Orders ≥ val+len and < prec are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<T = C64> {
    pub val: i32,
    pub coeffs: Vec<T>,
    pub prec: i32,
}

fn zero<T: Scalar>() -> T {
    T::zero()
}

impl<T: Scalar> Laurent<T> {
    pub fn new(val: i32, coeffs: Vec<T>, prec: i32) -> Self {
        let mut s = Laurent { val, coeffs, prec };
        s.clip();
        s
    }
    /// Exact polynomial c₀ + c₁h + …
    pub fn poly(coeffs: Vec<T>) -> Self {
        Laurent::new(0, coeffs, EXACT)
    }
    pub fn constant(c: T) -> Self {
        Laurent::poly(vec![c])
    }

    fn clip(&mut self) {
        if self.prec < EXACT {
            let max_len = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(max_len);
        }
    }

    /// Coefficient of h^k, None past the known precision.
    pub fn get(&self, k: i32) -> Option<T> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(zero());
        }
        Some(self.coeffs.get((k - self.val) as usize).copied().unwrap_or_else(zero))
    }
    pub fn coeff(&self, k: i32) -> T {
        self.get(k).expect("coefficient beyond known precision")
    }

    /// Drops leading zero coefficients.
    pub fn normalized(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| **c == zero()).count();
        Laurent {
            val: self.val + skip as i32,
            coeffs: self.coeffs[skip..].to_vec(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Laurent<T>) -> Laurent<T> {
        let val = self.val.min(o.val);
        let prec = self.prec.min(o.prec);
        let hi = (self.val + self.coeffs.len() as i32).max(o.val + o.coeffs.len() as i32);
        let hi = if prec < EXACT { hi.min(prec) } else { hi };
        let coeffs = (val..hi)
            .map(|k| self.get(k).unwrap_or_else(zero) + o.get(k).unwrap_or_else(zero))
            .collect();
        Laurent::new(val, coeffs, prec)
    }
    pub fn neg(&self) -> Laurent<T> {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| -*c).collect(), prec: self.prec }
    }
    pub fn sub(&self, o: &Laurent<T>) -> Laurent<T> {
        self.add(&o.neg())
    }
    pub fn scale(&self, s: T) -> Laurent<T> {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| *c * s).collect(), prec: self.prec }
    }
    pub fn add_const(&self, c: T) -> Laurent<T> {
        self.add(&Laurent::constant(c))
    }

    pub fn mul(&self, o: &Laurent<T>) -> Laurent<T> {
        let val = self.val + o.val;
        let p1 = if o.prec >= EXACT { EXACT } else { self.val + o.prec };
        let p2 = if self.prec >= EXACT { EXACT } else { o.val + self.prec };
        let prec = p1.min(p2);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Laurent::new(val, vec![], prec);
        }
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if prec < EXACT {
            len = len.min((prec - val).max(0) as usize);
        }
        let mut out = vec![zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Laurent::new(val, out, prec)
    }

    /// Reciprocal; `max_terms` bounds the length when the input is exact.
    pub fn inv(&self, max_terms: usize) -> Laurent<T> {
        let s = self.normalized();
        assert!(!s.coeffs.is_empty() && s.coeffs[0] != zero(), "inverse of a series with zero leading term");
        let n = if s.prec >= EXACT { max_terms } else { (s.prec - s.val).max(0) as usize };
        let c0inv = T::one() / s.coeffs[0];
        let mut out = vec![zero(); n];
        for k in 0..n {
            let mut acc = if k == 0 { T::one() } else { zero() };
            for j in 1..=k {
                if let Some(cj) = s.coeffs.get(j) {
                    acc = acc - *cj * out[k - j];
                }
            }
            out[k] = acc * c0inv;
        }
        Laurent::new(-s.val, out, -s.val + n as i32)
    }

    /// d/dh
    pub fn derivative(&self) -> Laurent<T> {
        let coeffs: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale((self.val + i as i32) as f64))
            .collect();
        let prec = if self.prec >= EXACT { EXACT } else { self.prec - 1 };
        Laurent::new(self.val - 1, coeffs, prec)
    }

    /// exp of a series with positive valuation (no constant term).
    pub fn exp(&self) -> Laurent<T> {
        let s = self.normalized();
        assert!(s.val >= 1 || s.coeffs.is_empty(), "exp needs a series without negative or constant terms");
        let n = if s.prec >= EXACT { 32 } else { s.prec.max(0) as usize };
        // e = exp(s) satisfies e' = s' e, solved order by order.
        let mut e = vec![zero(); n.max(1)];
        e[0] = T::one();
        for k in 1..n {
            let mut acc: T = zero();
            for j in 1..=k {
                let sj = s.get(j as i32).unwrap_or_else(zero);
                acc = acc + sj.scale(j as f64) * e[k - j];
            }
            e[k] = acc.scale(1.0 / k as f64);
        }
        Laurent::new(0, e, n as i32)
    }

    /// Termwise antiderivative of a series with val ≥ 0.
    pub fn integral(&self) -> Laurent<T> {
        let s = self.normalized();
        assert!(s.val >= 0 || s.coeffs.is_empty(), "integral of a series with a pole");
        let s = if s.coeffs.is_empty() { Laurent { val: 0, ..s } } else { s };
        let coeffs = s
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(1.0 / (s.val + i as i32 + 1) as f64))
            .collect();
        let prec = if s.prec >= EXACT { EXACT } else { s.prec + 1 };
        Laurent::new(s.val + 1, coeffs, prec)
    }

    /// Keeps the terms of order < `prec`.
    pub fn truncate(&self, prec: i32) -> Laurent<T> {
        Laurent::new(self.val, self.coeffs.clone(), self.prec.min(prec))
    }

    pub fn eval(&self, h: T) -> T {
        let mut acc: T = zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * h + *c;
        }
        acc * h.powi(self.val)
    }
}
