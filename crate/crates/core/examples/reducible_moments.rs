//! Moments of the reducible jump weight, the Hankel solve and orthogonality.

use heunrh::fixtures;
use heunrh::numerics::QuadratureRule;
use heunrh::reducible_rh::{
    classical_pvi_y, classical_pvi_y_printed, moments, moments_with, orthogonality_residuals, solve_rn, ReducibleData,
};
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let rd = fixtures::quarter_reducible();
    println!("delta = {}, s2 = {}", rd.delta, rd.s[1]);
    let gj = moments_with(&rd, 4, &QuadratureRule::gauss_jacobi(64))?;
    let ad = moments_with(&rd, 4, &QuadratureRule::adaptive(400_000, 1e-13))?;
    for k in 1..=4 {
        println!("phi_{k} = {:.16}  |GJ - adaptive| = {:.1e}", gj.phi(k), (gj.phi(k) - ad.phi(k)).norm());
    }

    let c = |v: f64| C64::new(v, 0.0);
    let rd = ReducibleData::new([c(0.1), c(0.3), c(0.2)], 3, C64::new(0.45, 0.2), c(1.0), c(0.7))?;
    let mt = moments(&rd, 2 * rd.n + 2)?;
    let sol = solve_rn(&mt, rd.n)?;
    println!("pi_3 coefficients {:.10?}", sol.pi_n().coeffs);
    println!("|det R - 1| = {:.1e}", (sol.det_r(C64::new(2.0, 1.0)) - 1.0).norm());
    let orth = orthogonality_residuals(&rd, &sol, 96)?;
    println!("max orthogonality residual {:.1e}", orth.iter().cloned().fold(0.0, f64::max));

    let x = C64::new(0.3, 0.4);
    let one = ReducibleData::new([c(0.1), c(0.3), c(0.2)], 1, C64::new(0.45, 0.2), c(1.0), c(0.7))?;
    let mt1 = moments(&one, 4)?;
    println!(
        "y (general) = {:.14}, y (closed n = 1) = {:.14}",
        classical_pvi_y(&mt1, 1, one.delta, x)?,
        classical_pvi_y_printed(&mt1, 1, one.delta, x)?
    );
    Ok(())
}
