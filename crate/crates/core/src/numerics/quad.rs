//! Quadrature for integrands with algebraic endpoint behaviour t^p (1−t)^q.

use crate::error::{HeunError, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureKind {
    GaussJacobi,
    AdaptiveKronrod,
}

/// Rule selection. The endpoint exponents are passed alongside the rule so that
/// one rule value can serve intervals with different exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    /// Gauss–Jacobi: number of nodes. Kronrod: maximum number of integrand evaluations.
    pub node_budget: usize,
    /// Relative tolerance for the adaptive rule.
    pub tol: f64,
}

impl QuadratureRule {
    pub fn gauss_jacobi(nodes: usize) -> Self {
        QuadratureRule { kind: QuadratureKind::GaussJacobi, node_budget: nodes, tol: 1e-12 }
    }
    pub fn adaptive(budget: usize, tol: f64) -> Self {
        QuadratureRule { kind: QuadratureKind::AdaptiveKronrod, node_budget: budget, tol }
    }
    pub fn validate(&self, exponents: (f64, f64)) -> Result<()> {
        for e in [exponents.0, exponents.1] {
            if !(e > -1.0) {
                return Err(HeunError::InvalidExponent(e));
            }
        }
        if self.node_budget < 8 {
            return Err(HeunError::InvalidParameters(format!(
                "node budget {} below the minimum of 8",
                self.node_budget
            )));
        }
        Ok(())
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss_jacobi(64)
    }
}

/// Nodes and weights on [0,1] for the weight t^p (1−t)^q.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub p: f64,
    pub q: f64,
}

impl GaussJacobi {
    /// Golub–Welsch on the Jacobi matrix of P^(q,p) mapped by t = (1+x)/2.
    pub fn new(n: usize, p: f64, q: f64) -> Result<Self> {
        if !(p > -1.0) {
            return Err(HeunError::InvalidExponent(p));
        }
        if !(q > -1.0) {
            return Err(HeunError::InvalidExponent(q));
        }
        if n == 0 {
            return Err(HeunError::InvalidParameters("zero nodes".into()));
        }
        // Jacobi parameters on [-1,1] with weight (1-x)^a (1+x)^b.
        let (a, b) = (q, p);
        let ab = a + b;
        let mut jm = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let diag = if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
            };
            jm[(k, k)] = diag;
        }
        for k in 1..n {
            let kf = k as f64;
            let b2 = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                let t = 2.0 * kf + ab;
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
            };
            let off = b2.sqrt();
            jm[(k, k - 1)] = off;
            jm[(k - 1, k)] = off;
        }
        let eig = SymmetricEigen::new(jm);
        let mu0 = statrs::function::beta::beta(p + 1.0, q + 1.0);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = eig.eigenvalues[i];
                let v0 = eig.eigenvectors[(0, i)];
                ((1.0 + x) * 0.5, mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
        Ok(GaussJacobi {
            nodes: pairs.iter().map(|x| x.0).collect(),
            weights: pairs.iter().map(|x| x.1).collect(),
            p,
            q,
        })
    }

    /// ∫₀¹ F(t) t^p (1−t)^q dt
    pub fn integrate<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| f(t) * w)
            .sum()
    }
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 panel: (Kronrod value, |K − G|).
fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Globally adaptive G7K15 on [a,b]; returns (value, error estimate, evaluations).
pub fn adaptive_gk<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<(C64, f64, usize)> {
    let mut panels = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    let mut evals = 15;
    loop {
        let total: C64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol * total.norm() || err <= 1e-300 {
            return Ok((total, err, evals));
        }
        if evals + 30 > budget {
            return Err(HeunError::NonConvergence(format!(
                "adaptive Kronrod: error {err:e} after {evals} evaluations"
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (pa, pb, _, _) = panels.swap_remove(idx);
        let m = 0.5 * (pa + pb);
        if m <= pa || m >= pb {
            return Err(HeunError::NonConvergence("adaptive Kronrod: interval underflow".into()));
        }
        let (v1, e1) = gk15(&f, pa, m);
        let (v2, e2) = gk15(&f, m, pb);
        evals += 30;
        panels.push((pa, m, v1, e1));
        panels.push((m, pb, v2, e2));
    }
}

/// ∫₀¹ F(t) t^p (1−t)^q dt by adaptive Kronrod after removing the endpoint
/// behaviour with t = s^{1/(p+1)} near 0 and 1−t = s^{1/(q+1)} near 1.
pub fn adaptive_singular_unit<F: Fn(f64) -> C64>(f: F, p: f64, q: f64, tol: f64, budget: usize) -> Result<(C64, f64)> {
    let p1 = p + 1.0;
    let q1 = q + 1.0;
    let left = |s: f64| {
        let t = s.powf(1.0 / p1);
        f(t) * (1.0 - t).powf(q) / p1
    };
    let right = |s: f64| {
        let u = s.powf(1.0 / q1);
        f(1.0 - u) * (1.0 - u).powf(p) / q1
    };
    let (v1, e1, n1) = adaptive_gk(left, 0.0, 0.5f64.powf(p1), tol * 0.5, budget / 2)?;
    let (v2, e2, _) = adaptive_gk(right, 0.0, 0.5f64.powf(q1), tol * 0.5, budget - n1)?;
    Ok((v1 + v2, e1 + e2))
}

/// ∫_a^b f(ζ)(ζ−a)^p (b−ζ)^q dζ along the straight segment, with principal powers
/// of (b−a). Returns the value and an error estimate.
pub fn integrate_singular<F: Fn(C64) -> C64>(
    f: F,
    interval: (C64, C64),
    exponents: (f64, f64),
    rule: &QuadratureRule,
) -> Result<(C64, f64)> {
    rule.validate(exponents)?;
    let (a, b) = interval;
    let d = b - a;
    let (p, q) = exponents;
    let g = |t: f64| f(a + d * t);
    let scale = d.powc(C64::new(1.0 + p + q, 0.0));
    match rule.kind {
        QuadratureKind::GaussJacobi => {
            let n = rule.node_budget;
            let gj = GaussJacobi::new(n, p, q)?;
            let v = gj.integrate(&g);
            let coarse = GaussJacobi::new(n / 2, p, q)?.integrate(&g);
            Ok((v * scale, (v - coarse).norm() * scale.norm()))
        }
        QuadratureKind::AdaptiveKronrod => {
            let (v, e) = adaptive_singular_unit(g, p, q, rule.tol, rule.node_budget)?;
            Ok((v * scale, e * scale.norm()))
        }
    }
}
