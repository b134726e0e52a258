//! Build a Fuchsian system, inspect its residues and invert the expansion at infinity.

use heunrh::fuchsian::{eigenvalue_error, recover_pvi, FuchsianSystem, SystemSpec};
use heunrh::numerics::ComplexMat2;
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let sys = FuchsianSystem::new(SystemSpec {
        delta: C64::new(0.3, 0.1),
        alpha: [C64::new(0.2, 0.05), C64::new(0.31, 0.0), C64::new(0.17, 0.0)],
        x: C64::new(0.4, 0.3),
        y: C64::new(0.7, -0.2),
        z: C64::new(0.1, 0.25),
        kappa: C64::new(1.2, 0.0),
    })?;
    println!("p = {:.12}, y~ = {:.12}, kappa~ = {:.12}", sys.p, sys.y_tilde, sys.kappa_tilde);

    let res = sys.residues();
    let sum: ComplexMat2 = res.iter().copied().sum();
    println!("|A1+A2+A3 + delta sigma3| = {:.3e}", sum.distance(&ComplexMat2::diag(-sys.delta, sys.delta)));
    println!("spectral error            = {:.3e}", eigenvalue_error(&res, &sys.alpha));

    let k = sys.pvi_parameters();
    println!("P_VI constants: {k:?}");

    let asym = sys.psi_expansion()?;
    let back = recover_pvi(&asym, sys.x, sys.delta)?;
    println!("(psi1)+ = {:.12}, d1 = {:.12}", asym.psi1_plus(), asym.d1);
    println!(
        "recovered y = {:.12} (from {:.12}), z = {:.12} (from {:.12})",
        back.y, sys.y, back.z, sys.z
    );
    Ok(())
}
