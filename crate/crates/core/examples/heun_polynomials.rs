//! Heun polynomials from reducible monodromy: scan Δ₂(a), certify the root and
//! read off u = π₁; then the same locus at fixed a by solving for s₃.

use heunrh::fixtures;
use heunrh::reducible_rh::{heun_locus, heun_locus_ratio, SearchRegion};
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let rd = fixtures::n1_reducible();
    let region = SearchRegion { re: [0.3, 0.7], im: [-0.2, 0.2], grid: 9 };
    let rep = heun_locus(&rd, &region)?;
    println!("{} seeds, {} certified roots", rep.seeds, rep.roots.len());
    for r in &rep.roots {
        println!("a* = {:.14}, |Delta_2| / scale = {:.1e}, GHE residual = {:.1e}", r.a, r.defect, r.residual);
        println!("u(lambda) = lambda + ({:.16})", r.polynomial[0]);
        println!("mu = {:.12}, nu = {:.12}", r.heun.mu, r.heun.nu);
    }

    let guess = rd.with_s3(C64::new(1.0, 0.0))?;
    for r in heun_locus_ratio(&guess)? {
        println!("at a = 1/2: s3 = {:.16}, residual {:.1e}", r.s[2], r.residual);
    }
    Ok(())
}
