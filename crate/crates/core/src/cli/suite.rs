//! The `invariants` verification suite: quick structural checks over seeded
//! random parameters, one result per invariant.

use super::config::Config;
use crate::error::{HeunError, Result};
use crate::fixtures;
use crate::fuchsian::{eigenvalue_error, recover_pvi};
use crate::heun_reduction::{accessory_from_c0, reduce, to_canonical_ghe};
use crate::monodromy::{fricke_residual, monodromy_matrices, reducible_monodromy_set, trace_coordinates};
use crate::numerics::{ComplexMat2, QuadratureRule};
use crate::pole_matrices::{limit_hat, limit_regular};
use crate::pvi_series::{printed_simple_c1, recursion_simple_jet};
use crate::reducible_rh::{heun_locus, moments_with, SearchRegion};
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst observed value; NaN when the check could not run.
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn check(name: &'static str, tol: f64, value: Result<f64>) -> Check {
    match value {
        Ok(v) => Check { name, value: v, tol, pass: v <= tol, error: None },
        Err(e) => Check { name, value: f64::NAN, tol, pass: false, error: Some(format!("{}: {e}", e.code())) },
    }
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    it.into_iter().try_fold(0.0, |m, v| Ok(f64::max(m, v?)))
}

fn residue_contract(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed);
    max_of((0..cfg.verify.samples).map(|_| {
        let s = fixtures::random_system(&mut rng);
        let res = s.residues();
        let sum: ComplexMat2 = res.iter().copied().sum();
        let target = ComplexMat2::diag(-s.delta, s.delta);
        Ok(sum.distance(&target).max(eigenvalue_error(&res, &s.alpha)))
    }))
}

fn round_trip(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed + 1);
    max_of((0..cfg.verify.samples).map(|_| {
        let s = fixtures::random_system(&mut rng);
        let back = recover_pvi(&s.psi_expansion()?, s.x, s.delta)?;
        let pairs = [(back.kappa, s.kappa), (back.p, s.p), (back.y, s.y), (back.z, s.z)];
        Ok(pairs.iter().map(|(u, v)| (u - v).norm() / v.norm().max(1.0)).fold(0.0, f64::max))
    }))
}

fn rational<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(-12i32..=12) as f64 / rng.gen_range(1i32..=8) as f64
}

fn printed_series(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed + 2);
    max_of((0..cfg.verify.samples).map(|_| {
        let c = |v: f64| C64::new(v, 0.0);
        let a = c(2.0 + rational(&mut rng).abs());
        let c0 = c(rational(&mut rng));
        let sigma: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let delta = c(0.2 + 0.05 * rng.gen_range(0..6) as f64);
        let alpha = [(); 3].map(|_| c(0.05 * rng.gen_range(1..9) as f64));
        let jet = recursion_simple_jet(a, c0, sigma, delta, alpha, 1)?;
        let printed = printed_simple_c1(a, c0, sigma, delta, alpha);
        Ok((jet.coeff(1) - printed).norm() / printed.norm().max(1.0))
    }))
}

fn limit_spectra(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed + 3);
    max_of((0..cfg.verify.samples).map(|_| {
        let s = fixtures::random_system(&mut rng);
        let a = C64::new(rng.gen_range(1.5..3.0), rng.gen_range(-0.5..0.5));
        let c0 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut worst: f64 = 0.0;
        for ls in [limit_regular(a, c0, s.delta, s.alpha, s.kappa)?, limit_hat(a, c0, s.delta, s.alpha, s.kappa)?] {
            let (exps, d) = ls.exponent_table();
            let res = ls.residues();
            let sum: ComplexMat2 = res.iter().copied().sum();
            worst = worst
                .max(eigenvalue_error(&res, &exps))
                .max(sum.distance(&ComplexMat2::diag(-d, d)))
                .max(to_canonical_ghe(&reduce(&ls)?).fuchs_residual().norm());
        }
        Ok(worst)
    }))
}

fn accessory_routes(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed + 4);
    max_of((0..cfg.verify.samples).map(|_| {
        let s = fixtures::random_system(&mut rng);
        let a = C64::new(rng.gen_range(1.5..3.0), rng.gen_range(-0.5..0.5));
        let c0 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let nu = reduce(&limit_regular(a, c0, s.delta, s.alpha, s.kappa)?)?.nu;
        let other = accessory_from_c0(c0, a, s.delta, s.alpha);
        Ok((nu - other).norm() / other.norm().max(1.0))
    }))
}

fn monodromy(cfg: &Config) -> Result<f64> {
    let mut rng = fixtures::rng(cfg.verify.seed + 5);
    let opts = cfg.monodromy.loop_options();
    max_of((0..cfg.verify.monodromy_samples).map(|_| {
        let s = fixtures::monodromy_system(&mut rng);
        let set = monodromy_matrices(&s.field(), s.alpha, &opts)?;
        let fricke = fricke_residual(&trace_coordinates(&set)).norm();
        Ok(set.cyclic_residual().max(set.trace_error(s.alpha)).max(fricke))
    }))
}

fn reducible_cyclic() -> Result<f64> {
    let rd = fixtures::n1_reducible();
    let set = reducible_monodromy_set(rd.alpha, rd.delta, rd.n, rd.s[0], rd.s[2])?;
    Ok(set.cyclic_residual().max(rd.cyclic_phase_residual()))
}

fn dual_quadrature(cfg: &Config) -> Result<f64> {
    let rd = fixtures::n1_reducible();
    let k = 2 * rd.n + 2;
    let gj = moments_with(&rd, k, &QuadratureRule::gauss_jacobi(cfg.moments.gauss_jacobi_nodes))?;
    let ad = moments_with(&rd, k, &QuadratureRule::adaptive(cfg.moments.adaptive_budget, cfg.moments.adaptive_tol))?;
    Ok((1..=k).map(|j| (gj.phi(j) - ad.phi(j)).norm() / gj.scale[j - 1]).fold(0.0, f64::max))
}

fn heun_polynomial() -> Result<f64> {
    let rd = fixtures::n1_reducible();
    let region = SearchRegion { re: [0.3, 0.7], im: [-0.2, 0.2], grid: 9 };
    let rep = heun_locus(&rd, &region)?;
    rep.roots
        .iter()
        .find(|r| (r.a - 0.5).norm() < 1e-8)
        .map(|r| r.residual)
        .ok_or(HeunError::NoRootInRegion)
}

pub fn invariants(cfg: &Config) -> Vec<Check> {
    let tol = cfg.verify.tol;
    vec![
        check("residue_contract", 1e-10, residue_contract(cfg)),
        check("psi_expansion_round_trip", 1e-10, round_trip(cfg)),
        check("printed_c1_matches_recursion", 1e-12, printed_series(cfg)),
        check("limit_system_spectra_and_fuchs", 1e-10, limit_spectra(cfg)),
        check("accessory_routes_agree", 1e-12, accessory_routes(cfg)),
        check("monodromy_cyclic_trace_fricke", tol, monodromy(cfg)),
        check("reducible_cyclic_exact", 1e-14, reducible_cyclic()),
        check("moments_dual_quadrature", 1e-10, dual_quadrature(cfg)),
        check("heun_polynomial_residual", tol, heun_polynomial()),
    ]
}
