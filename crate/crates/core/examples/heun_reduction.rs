//! Reduce a limit system to the general Heun equation and check the first row.

use heunrh::heun_reduction::{accessory_from_c0, reduce, row_residuals_on_circle, to_canonical_ghe};
use heunrh::pole_matrices::limit_regular;
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let c = |v: f64| C64::new(v, 0.0);
    let (a, c0, delta) = (c(2.0), c(0.0), c(0.75));
    let alpha = [c(0.25); 3];
    let ls = limit_regular(a, c0, delta, alpha, c(1.0))?;
    let hp = reduce(&ls)?;
    let ghe = to_canonical_ghe(&hp);
    println!("mu = {:.12}, nu = {:.12}", hp.mu, hp.nu);
    println!("nu from c0    = {:.12}", accessory_from_c0(c0, a, delta, alpha));
    println!(
        "canonical: gamma = {}, kappa = {}, epsilon = {}, alpha = {}, beta = {}, q = {}",
        ghe.gamma, ghe.kappa_exp, ghe.epsilon, ghe.alpha, ghe.beta, ghe.q
    );
    println!("Fuchs relation residual = {:.1e}", ghe.fuchs_residual().norm());

    let res = row_residuals_on_circle(&ls, &hp, c(0.5), 1.0, 24, 1e-12)?;
    println!("max relative GHE residual of the prefactored row: {:.2e}", res.iter().cloned().fold(0.0, f64::max));
    Ok(())
}
