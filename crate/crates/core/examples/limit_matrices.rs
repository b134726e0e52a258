//! Closed-form limit systems at poles of y(x), checked against the x -> a
//! limit of the Schlesinger-gauged matrix.

use heunrh::pole_matrices::{gauge_limit_oracle, limit_system, OracleOptions, Variant};
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let c = |v: f64| C64::new(v, 0.0);
    let a = c(2.0);
    let alpha = [c(0.25), c(1.0 / 3.0), c(0.2)];
    let kappa0 = c(1.5);
    for (v, delta, param) in [
        (Variant::Regular, c(0.75), c(1.0 / 7.0)),
        (Variant::Hat, c(0.75), c(1.0 / 7.0)),
        (Variant::Check, c(1.0), c(1.0 / 7.0)),
        (Variant::Tilde, c(0.5), c(0.6)),
    ] {
        let ls = limit_system(v, a, param, delta, alpha, kappa0)?;
        let oracle = gauge_limit_oracle(v, a, param, delta, alpha, kappa0, &OracleOptions::default())?;
        let (exps, d_inf) = ls.exponent_table();
        println!(
            "{v:?}: a3 = {:.10}, b3 = {:.10}, exponents {exps:.3?}, delta_inf = {d_inf:.3}, |closed - limit| = {:.2e}",
            ls.coeffs.a3,
            ls.coeffs.b3,
            oracle.max_rel_distance(&ls.coeffs)
        );
    }
    Ok(())
}
