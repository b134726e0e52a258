//! Laurent jets of P_VI at movable poles and their order of contact.

use heunrh::pvi_series::{double_pole_jet, jet_residual_dd, simple_pole_jet};
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let c = |v: f64| C64::new(v, 0.0);
    let alpha = [c(0.25); 3];
    let jet = simple_pole_jet(c(2.0), c(0.0), 1, c(0.75), alpha, 4)?;
    for (k, v) in &jet.coeffs {
        println!("c_{k:<2} = {v:.15}");
    }

    // Truncated at depth m the P_VI residual is O(h^{m-3}); halving h divides it by 2^{m-3}.
    let full = simple_pole_jet(c(2.0), c(0.125), -1, c(0.625), [c(0.25), c(0.375), c(0.125)], 8)?;
    for m in 3..=6 {
        let t = full.with_depth(m);
        let r1 = jet_residual_dd(&t, c(4e-3))?.norm();
        let r2 = jet_residual_dd(&t, c(2e-3))?.norm();
        println!("depth {m}: residual ratio {:.3} (expected {})", r1 / r2, 1 << (m - 3));
    }

    let dbl = double_pole_jet(c(2.0), c(0.6), alpha, 2)?;
    println!("double pole: c_-1 = {:.12}, c_0 = {:.12}", dbl.coeff(-1), dbl.coeff(0));
    Ok(())
}
