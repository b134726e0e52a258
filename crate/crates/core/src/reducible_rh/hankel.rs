//! The polynomial left factor R_n from Hankel solves, its expansion at
//! infinity, the classical P_VI value y and Heun polynomials.

use super::branch::Segment;
use super::moments::{f_coefficients, MomentTable};
use super::ReducibleData;
use crate::error::{HeunError, Result};
use crate::heun_reduction::{accessory_from_d1, mu_for, HeunParameters};
use crate::numerics::linalg::{det_rcond, DEFAULT_RCOND};
use crate::numerics::series::{Laurent, EXACT};
use crate::numerics::{hankel_solve_with, ComplexMat2, ComplexPoly, GaussJacobi};
use crate::pole_matrices::Variant;
use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Tolerance on |Δ_{n+1}| relative to its Hadamard bound at a Heun locus.
pub const LOCUS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RHSolution {
    pub n: usize,
    /// p₀ … p_n with p_n = 1.
    pub p: Vec<C64>,
    /// q₀ … q_{n−1}
    pub q: Vec<C64>,
    /// r₀ … r_{n−1}
    pub r: Vec<C64>,
    /// s₀ … s_{n−2}
    pub s: Vec<C64>,
    /// c_{n−1} = r_{n−1}; zero for n = 0.
    pub c_nm1: C64,
    pub delta_n: C64,
    pub delta_n1: C64,
    /// Hadamard bounds for Δ_n and Δ_{n+1}.
    pub scale_n: f64,
    pub scale_n1: f64,
    pub rcond: f64,
}

fn poly_eval(c: &[C64], lam: C64) -> C64 {
    c.iter().rev().fold(C64::default(), |acc, &v| acc * lam + v)
}

impl RHSolution {
    /// π_n, monic of degree n.
    pub fn pi_n(&self) -> ComplexPoly {
        ComplexPoly::new(self.p.clone())
    }

    /// π_{n−1} = r(λ)/c_{n−1}; zero for n = 0.
    pub fn pi_nm1(&self) -> ComplexPoly {
        if self.n == 0 {
            return ComplexPoly::zero();
        }
        ComplexPoly::new(self.r.iter().map(|v| v / self.c_nm1).collect())
    }

    pub fn r_matrix(&self, lam: C64) -> ComplexMat2 {
        if self.n == 0 {
            return ComplexMat2::identity();
        }
        ComplexMat2::new(poly_eval(&self.p, lam), poly_eval(&self.q, lam), poly_eval(&self.r, lam), poly_eval(&self.s, lam))
    }

    pub fn det_r(&self, lam: C64) -> C64 {
        self.r_matrix(lam).det()
    }

    /// |Δ_{n+1}| relative to its Hadamard bound.
    pub fn locus_defect(&self) -> f64 {
        if self.scale_n1 > 0.0 {
            self.delta_n1.norm() / self.scale_n1
        } else {
            self.delta_n1.norm()
        }
    }
}

fn need(mt: &MomentTable, k: usize, what: &str) -> Result<()> {
    if mt.len() < k {
        return Err(HeunError::InvalidParameters(format!("{what} needs {k} moments, table has {}", mt.len())));
    }
    Ok(())
}

/// Δ_m with the convention Δ₀ = 1.
fn hankel_det(mt: &MomentTable, m: usize) -> (C64, f64) {
    if m == 0 {
        return (C64::new(1.0, 0.0), 1.0);
    }
    let (d, rc, _) = det_rcond(&mt.hankel(m));
    (d, rc)
}

fn singular(mt: &MomentTable, n: usize, det: C64, rcond: f64, cut: f64) -> bool {
    n > 0 && (rcond < cut || det.norm() < cut * mt.hankel_scale(n))
}

pub fn solve_rn(mt: &MomentTable, n: usize) -> Result<RHSolution> {
    solve_rn_with(mt, n, DEFAULT_RCOND)
}

/// R_n from p = −H_n⁻¹(φ_{n+1..2n}), r = H_n⁻¹e_n and the back-substituted q, s.
/// NotSolvable when H_n is singular to the rcond cut, in condition number or
/// in |Δ_n| against its Hadamard bound.
pub fn solve_rn_with(mt: &MomentTable, n: usize, rcond_cut: f64) -> Result<RHSolution> {
    need(mt, 2 * n + 1, "solve_rn")?;
    let (delta_n1, _) = hankel_det(mt, n + 1);
    let scale_n1 = mt.hankel_scale(n + 1);
    if n == 0 {
        return Ok(RHSolution {
            n,
            p: vec![C64::new(1.0, 0.0)],
            q: vec![],
            r: vec![],
            s: vec![],
            c_nm1: C64::default(),
            delta_n: C64::new(1.0, 0.0),
            delta_n1,
            scale_n: 1.0,
            scale_n1,
            rcond: 1.0,
        });
    }
    let h = mt.hankel(n);
    let (delta_n, rcond, _) = det_rcond(&h);
    if singular(mt, n, delta_n, rcond, rcond_cut) {
        return Err(HeunError::NotSolvable(n));
    }
    let v = DVector::from_fn(n, |i, _| mt.phi(n + 1 + i));
    let mut en = DVector::from_element(n, C64::default());
    en[n - 1] = C64::new(1.0, 0.0);
    let map = |e: HeunError| match e {
        HeunError::IllConditioned(_) => HeunError::NotSolvable(n),
        other => other,
    };
    let pv = hankel_solve_with(&h, &v, rcond_cut).map_err(map)?.x;
    let rv = hankel_solve_with(&h, &en, rcond_cut).map_err(map)?.x;
    let mut p: Vec<C64> = pv.iter().map(|x| -x).collect();
    p.push(C64::new(1.0, 0.0));
    let r: Vec<C64> = rv.iter().copied().collect();
    let q = (0..n).map(|k| -((k + 1)..=n).map(|m| mt.phi(m - k) * p[m]).sum::<C64>()).collect();
    let s = (0..n.saturating_sub(1))
        .map(|k| -((k + 1)..n).map(|m| mt.phi(m - k) * r[m]).sum::<C64>())
        .collect();
    Ok(RHSolution {
        n,
        c_nm1: r[n - 1],
        p,
        q,
        r,
        s,
        delta_n,
        delta_n1,
        scale_n: mt.hankel_scale(n),
        scale_n1,
        rcond,
    })
}

/// (ψ₁)₊, (ψ₂)₊, p_{n−1} and d₁ = f₁ + p_{n−1} of Ψ(λ)λ^{δσ₃} at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticData {
    pub psi1_plus: C64,
    pub psi2_plus: C64,
    pub p_nm1: C64,
    pub d1: C64,
}

/// The closed forms through H_n⁻¹:
/// (ψ₁)₊ = φ_{2n+1} − vᵀH⁻¹v, (ψ₂)₊ = φ_{2n+2} − uᵀH⁻¹v − (ψ₁)₊vᵀH⁻¹e_n,
/// p_{n−1} = −vᵀH⁻¹e_n, with v = φ_{n+1..2n} and u = φ_{n+2..2n+1}.
pub fn part_dets(mt: &MomentTable, n: usize) -> Result<AsymptoticData> {
    need(mt, 2 * n + 2, "part_dets")?;
    let (mut viv, mut uiv, mut vie) = (C64::default(), C64::default(), C64::default());
    if n > 0 {
        let h = mt.hankel(n);
        let lu = h.lu();
        let v = DVector::from_fn(n, |i, _| mt.phi(n + 1 + i));
        let u = DVector::from_fn(n, |i, _| mt.phi(n + 2 + i));
        // H is symmetric, so vᵀH⁻¹e_n is the last entry of H⁻¹v.
        let hv = lu.solve(&v).ok_or(HeunError::NotSolvable(n))?;
        viv = v.dot(&hv);
        uiv = u.dot(&hv);
        vie = hv[n - 1];
    }
    let psi1 = mt.phi(2 * n + 1) - viv;
    let psi2 = mt.phi(2 * n + 2) - uiv - psi1 * vie;
    let p_nm1 = -vie;
    Ok(AsymptoticData { psi1_plus: psi1, psi2_plus: psi2, p_nm1, d1: mt.f[0] + p_nm1 })
}

/// The same data read off the Laurent expansion of R_n(λ)(I+φσ₊)λ^{−nσ₃}e^{Fσ₃}
/// in u = 1/λ. Also returns the largest coefficient that should vanish
/// (non-positive powers of the (1,2) entry and the u⁰ deviation of the (1,1) entry).
pub fn expansion_at_infinity(mt: &MomentTable, sol: &RHSolution) -> Result<(AsymptoticData, f64)> {
    let n = sol.n;
    need(mt, 2 * n + 2, "expansion_at_infinity")?;
    let prec = 3;
    let ni = n as i32;
    // Polynomials in λ become series in u with negative powers.
    let in_u = |c: &[C64]| {
        let deg = c.len() as i32 - 1;
        if c.is_empty() {
            return Laurent::new(0, vec![], EXACT);
        }
        Laurent::new(-deg, c.iter().rev().copied().collect(), EXACT)
    };
    let (r11, r12) = if n == 0 {
        (Laurent::constant(C64::new(1.0, 0.0)), Laurent::new(0, vec![], EXACT))
    } else {
        (in_u(&sol.p), in_u(&sol.q))
    };
    let kmax = mt.len();
    let phi = Laurent::new(1, mt.phi.clone(), kmax as i32 + 1);
    let f = Laurent::new(1, f_coefficients_from(mt, kmax), kmax as i32 + 1);
    let ep = f.exp();
    let em = f.neg().exp();
    let un = Laurent::new(ni, vec![C64::new(1.0, 0.0)], EXACT);
    let u_n = Laurent::new(-ni, vec![C64::new(1.0, 0.0)], EXACT);
    let w11 = r11.mul(&un).mul(&ep).truncate(prec);
    let w12 = r11.mul(&phi).add(&r12).mul(&u_n).mul(&em).truncate(prec);
    let d1 = w11.coeff(1);
    let psi1 = w12.coeff(1);
    let psi2 = w12.coeff(2) + d1 * psi1;
    let mut defect = (w11.coeff(0) - 1.0).norm();
    for k in w12.val.min(0)..=0 {
        defect = defect.max(w12.coeff(k).norm());
    }
    let p_nm1 = if n == 0 { C64::default() } else { sol.p[n - 1] };
    Ok((AsymptoticData { psi1_plus: psi1, psi2_plus: psi2, p_nm1, d1 }, defect))
}

fn f_coefficients_from(mt: &MomentTable, k: usize) -> Vec<C64> {
    let mut f = mt.f.clone();
    f.resize(k, C64::default());
    f
}

fn check_hankel_pair(mt: &MomentTable, n: usize) -> Result<(C64, C64)> {
    need(mt, 2 * n + 2, "classical_pvi_y")?;
    let (dn, rcn) = hankel_det(mt, n);
    let (dn1, _) = hankel_det(mt, n + 1);
    if singular(mt, n, dn, rcn, DEFAULT_RCOND) || dn1.norm() < DEFAULT_RCOND * mt.hankel_scale(n + 1) {
        return Err(HeunError::DegenerateHankel(format!("Delta_{n} = {dn:e}, Delta_{} = {dn1:e}", n + 1)));
    }
    Ok((dn, dn1))
}

fn check_delta(delta: C64) -> Result<()> {
    if (delta - 0.5).norm() < 1e-12 {
        return Err(HeunError::BadDelta(format!("{delta}")));
    }
    Ok(())
}

/// y = x+1 − f₁/(δ−½) − ((δ−1)/(δ−½))(Δ_n/Δ_{n+1})(φ_{2n+2} − uᵀH_n⁻¹v) + (δ/(δ−½)) vᵀH_n⁻¹e_n.
pub fn classical_pvi_y(mt: &MomentTable, n: usize, delta: C64, x: C64) -> Result<C64> {
    check_delta(delta)?;
    let (dn, dn1) = check_hankel_pair(mt, n)?;
    let (mut uiv, mut vie) = (C64::default(), C64::default());
    if n > 0 {
        let inv = mt.hankel(n).lu().try_inverse().ok_or(HeunError::NotSolvable(n))?;
        let v = DVector::from_fn(n, |i, _| mt.phi(n + 1 + i));
        let u = DVector::from_fn(n, |i, _| mt.phi(n + 2 + i));
        uiv = (u.transpose() * &inv * &v)[(0, 0)];
        vie = (v.transpose() * &inv)[(0, n - 1)];
    }
    let h = delta - 0.5;
    let ratio = dn / dn1;
    Ok(x + 1.0 - mt.f[0] / h - (delta - 1.0) / h * ratio * mt.phi(2 * n + 2)
        + (delta - 1.0) / h * ratio * uiv
        + delta / h * vie)
}

/// The displayed n = 0 and n = 1 forms.
pub fn classical_pvi_y_printed(mt: &MomentTable, n: usize, delta: C64, x: C64) -> Result<C64> {
    check_delta(delta)?;
    check_hankel_pair(mt, n)?;
    let h = delta - 0.5;
    let p = |k| mt.phi(k);
    match n {
        0 => Ok(x + 1.0 - (delta - 1.0) * p(2) / (h * p(1)) - mt.f[0] / h),
        1 => {
            let num = p(1) * p(4) - p(2) * p(3);
            let den = p(1) * p(3) - p(2) * p(2);
            Ok(x + 1.0 - (delta - 1.0) / h * num / den + delta / h * p(2) / p(1) - mt.f[0] / h)
        }
        _ => Err(HeunError::InvalidParameters(format!("no displayed form for n = {n}"))),
    }
}

/// y = x+1 − (δ−1)(ψ₂)₊/((δ−½)(ψ₁)₊) − d₁/(δ−½), from the expansion at infinity.
pub fn classical_pvi_y_via_expansion(mt: &MomentTable, sol: &RHSolution, delta: C64, x: C64) -> Result<C64> {
    check_delta(delta)?;
    check_hankel_pair(mt, sol.n)?;
    let (ad, _) = expansion_at_infinity(mt, sol)?;
    let h = delta - 0.5;
    Ok(x + 1.0 - (delta - 1.0) * ad.psi2_plus / (h * ad.psi1_plus) - ad.d1 / h)
}

/// max_k |∫π_nζ^k g dζ| / ∫|π_n||ζ|^k|g||dζ| for k < n, by direct Gauss–Jacobi
/// quadrature of the products (independent of the moment table).
pub fn orthogonality_residuals(rd: &ReducibleData, sol: &RHSolution, nodes: usize) -> Result<Vec<f64>> {
    let pi = sol.pi_n();
    let mut out = Vec::with_capacity(sol.n);
    let segs = [Segment::new(rd, 0), Segment::new(rd, 1)];
    let rules = segs
        .iter()
        .map(|s| {
            let (p, q) = s.exponents();
            GaussJacobi::new(nodes, p, q)
        })
        .collect::<Result<Vec<_>>>()?;
    for k in 0..sol.n {
        let (mut val, mut abs) = (C64::default(), 0.0);
        for (seg, rule) in segs.iter().zip(&rules) {
            let d = seg.end - seg.start;
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let z = seg.point(t);
                let term = seg.coef * seg.smooth_log(t).exp() * pi.eval(z) * z.powi(k as i32) * d * w;
                val += term;
                abs += term.norm();
            }
        }
        out.push(if abs > 0.0 { val.norm() / abs } else { 0.0 });
    }
    Ok(out)
}

/// π_n at a root of Δ_{n+1} and the Heun parameters of the equation it
/// solves: exponents from −α, μ = n(n+2δ−2) and ν from d₁ = f₁ + p_{n−1}.
pub fn build_heun_polynomial(sol: &RHSolution, rd: &ReducibleData) -> Result<(ComplexPoly, HeunParameters)> {
    if sol.n != rd.n {
        return Err(HeunError::InvalidParameters(format!("solution degree {} but data n = {}", sol.n, rd.n)));
    }
    let defect = sol.locus_defect();
    if defect > LOCUS_TOL {
        return Err(HeunError::NotAtLocus(format!("|Delta_{}| / scale = {defect:e}", sol.n + 1)));
    }
    let neg = rd.alpha.map(|a| -a);
    let p_nm1 = if sol.n == 0 { C64::default() } else { sol.p[sol.n - 1] };
    let d1 = f_coefficients(rd.alpha, rd.a, 1)[0] + p_nm1;
    let acc = accessory_from_d1(d1, rd.a, rd.delta, neg)?;
    let hp = HeunParameters {
        variant: Variant::Regular,
        a: rd.a,
        alpha: neg,
        delta: rd.delta,
        mu: mu_for(Variant::Regular, neg, rd.delta)?,
        nu: acc.nu,
    };
    Ok((sol.pi_n(), hp))
}

#[cfg(test)]
mod tests {
    use super::super::moments::moments;
    use super::*;
    use crate::heun_reduction::ghe_residual;

    fn c(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    fn random_table(seed: u64, k: usize) -> MomentTable {
        // Deterministic pseudo-random moments with geometric decay.
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let phi = (0..k).map(|i| C64::new(next(), next()) * 0.7f64.powi(i as i32)).collect();
        let f = (0..k).map(|_| C64::new(next(), next()) * 0.3).collect();
        MomentTable::from_values(phi, f)
    }

    #[test]
    fn n1_matches_displayed_matrix() {
        let mt = random_table(3, 4);
        let sol = solve_rn(&mt, 1).unwrap();
        let (p1, p2) = (mt.phi(1), mt.phi(2));
        assert!((sol.p[0] + p2 / p1).norm() < 1e-14);
        assert!((sol.q[0] + p1).norm() < 1e-14);
        assert!((sol.r[0] - 1.0 / p1).norm() < 1e-13);
        assert!(sol.s.is_empty());
        let lam = C64::new(0.3, 2.0);
        assert!((sol.r_matrix(lam).d()).norm() == 0.0);
    }

    #[test]
    fn n0_identity() {
        let mt = random_table(5, 2);
        let sol = solve_rn(&mt, 0).unwrap();
        assert_eq!(sol.pi_n(), ComplexPoly::one());
        assert!(sol.pi_nm1().is_zero());
        assert_eq!(sol.r_matrix(C64::new(2.0, 1.0)), ComplexMat2::identity());
        assert_eq!(sol.delta_n1, mt.phi(1));
    }

    #[test]
    fn zero_first_moment_not_solvable() {
        let mut mt = random_table(7, 4);
        mt.phi[0] = C64::default();
        mt.scale[0] = 1.0;
        assert!(matches!(solve_rn(&mt, 1), Err(HeunError::NotSolvable(1))));
        assert!(solve_rn(&mt, 0).is_ok());
    }

    #[test]
    fn rank_one_hankel_not_solvable() {
        let r = C64::new(0.4, 0.3);
        let phi: Vec<C64> = (0..6).map(|k| r.powi(k as i32)).collect();
        let mt = MomentTable::from_values(phi, vec![C64::default(); 6]);
        assert!(solve_rn(&mt, 1).is_ok());
        assert!(matches!(solve_rn(&mt, 2), Err(HeunError::NotSolvable(2))));
    }

    #[test]
    fn det_r_is_constant_one() {
        for n in 1..5 {
            let mt = random_table(11 + n as u64, 2 * n + 2);
            let sol = solve_rn(&mt, n).unwrap();
            for j in 0..10 {
                let lam = C64::from_polar(0.5 + j as f64 * 0.4, j as f64 * 1.3);
                assert!((sol.det_r(lam) - 1.0).norm() < 1e-9, "n {n}: {}", sol.det_r(lam));
            }
        }
    }

    #[test]
    fn printed_y_forms_agree_with_general() {
        for seed in 0..20 {
            let mt = random_table(100 + seed, 4);
            let delta = C64::new(-0.7 + 0.1 * seed as f64, 0.2);
            let x = C64::new(0.4, 0.1);
            for n in 0..2 {
                let g = classical_pvi_y(&mt, n, delta, x).unwrap();
                let p = classical_pvi_y_printed(&mt, n, delta, x).unwrap();
                assert!((g - p).norm() <= 1e-12 * (1.0 + g.norm()), "n {n}: {g} vs {p}");
            }
        }
    }

    #[test]
    fn part_dets_match_expansion() {
        for n in 0..5 {
            let mt = random_table(40 + n as u64, 2 * n + 2);
            let sol = solve_rn(&mt, n).unwrap();
            let a = part_dets(&mt, n).unwrap();
            let (b, defect) = expansion_at_infinity(&mt, &sol).unwrap();
            let sc = 1.0 + a.psi1_plus.norm() + a.psi2_plus.norm();
            assert!(defect < 1e-10, "n {n}: defect {defect:e}");
            assert!((a.psi1_plus - b.psi1_plus).norm() < 1e-10 * sc);
            assert!((a.psi2_plus - b.psi2_plus).norm() < 1e-10 * sc);
            assert!((a.d1 - b.d1).norm() < 1e-10 * sc);
            assert!((a.psi1_plus - sol.delta_n1 / sol.delta_n).norm() < 1e-10 * sc);
            let y1 = classical_pvi_y(&mt, n, c(-0.4), c(0.5)).unwrap();
            let y2 = classical_pvi_y_via_expansion(&mt, &sol, c(-0.4), c(0.5)).unwrap();
            assert!((y1 - y2).norm() < 1e-9 * (1.0 + y1.norm()), "n {n}: {y1} vs {y2}");
        }
    }

    #[test]
    fn degenerate_hankel_for_y() {
        let mut mt = random_table(9, 4);
        mt.phi[0] = C64::default();
        assert!(matches!(classical_pvi_y(&mt, 0, c(-0.3), c(0.5)), Err(HeunError::DegenerateHankel(_))));
    }

    #[test]
    fn orthogonality_of_generalized_jacobi() {
        let alpha = [c(0.12), c(0.27), c(0.18)];
        for n in 0..=5 {
            let rd = ReducibleData::new(alpha, n, C64::new(0.45, 0.15), c(1.0), C64::new(0.6, -0.2)).unwrap();
            let mt = moments(&rd, 2 * n + 2).unwrap();
            let sol = solve_rn(&mt, n).unwrap();
            let res = orthogonality_residuals(&rd, &sol, 96).unwrap();
            for (k, r) in res.iter().enumerate() {
                assert!(*r <= 1e-9, "n {n} k {k}: {r:e}");
            }
        }
    }

    #[test]
    fn n0_heun_polynomial_is_constant() {
        let rd = ReducibleData::new([c(0.1), c(0.2), c(0.3)], 0, c(0.5), c(1.0), c(1.0)).unwrap();
        let sol = RHSolution {
            n: 0,
            p: vec![c(1.0)],
            q: vec![],
            r: vec![],
            s: vec![],
            c_nm1: C64::default(),
            delta_n: c(1.0),
            delta_n1: C64::default(),
            scale_n: 1.0,
            scale_n1: 1.0,
            rcond: 1.0,
        };
        let (u, hp) = build_heun_polynomial(&sol, &rd).unwrap();
        assert_eq!(u, ComplexPoly::one());
        assert!(hp.mu.norm() < 1e-15);
        // With d₁ = f₁ the accessory parameter vanishes identically, so u = 1 is exact.
        assert!(hp.nu.norm() < 1e-14, "{}", hp.nu);
        for k in 0..8 {
            let lam = C64::from_polar(5.0, 0.3 + k as f64);
            assert!(ghe_residual(&u, &hp.canonical(), lam).unwrap().norm() < 1e-14);
        }
    }
}
