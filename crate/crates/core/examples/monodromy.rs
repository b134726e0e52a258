//! Monodromy matrices by loop transport, trace coordinates and the Fricke cubic.

use heunrh::fuchsian::{FuchsianSystem, SystemSpec};
use heunrh::monodromy::{fricke_residual, monodromy_matrices, trace_coordinates, LoopOptions};
use heunrh::C64;

fn main() -> heunrh::Result<()> {
    let c = |v: f64| C64::new(v, 0.0);
    let sys = FuchsianSystem::new(SystemSpec {
        delta: c(0.3),
        alpha: [c(0.2), c(0.31), c(0.17)],
        x: C64::new(0.5, 0.1),
        y: C64::new(0.5, 0.5),
        z: C64::new(0.05, -0.05),
        kappa: c(1.0),
    })?;
    let opts = LoopOptions::default();
    let set = monodromy_matrices(&sys.field(), sys.alpha, &opts)?;
    for (j, m) in set.m.iter().enumerate() {
        println!("M{} = {:.8?}", j + 1, m.m);
    }
    let tc = trace_coordinates(&set);
    println!("cyclic residual   {:.2e}", set.cyclic_residual());
    println!("reversed order    {:.2e}", set.reversed_cyclic_residual());
    println!("trace error       {:.2e}", set.trace_error(sys.alpha));
    println!("Fricke residual   {:.2e}", fricke_residual(&tc).norm());

    let wide = monodromy_matrices(&sys.field(), sys.alpha, &LoopOptions { radius_factor: 0.4, ..opts })?;
    let drift = (0..3).map(|j| wide.m[j].distance(&set.m[j])).fold(0.0, f64::max);
    println!("change under loop-radius doubling {drift:.2e}");
    Ok(())
}
