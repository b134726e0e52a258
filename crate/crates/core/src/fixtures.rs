//! Seeded parameter generators and named fixtures shared by the example
//! programs, the verification suite and the tests.

use crate::fuchsian::{FuchsianSystem, SystemSpec};
use crate::reducible_rh::ReducibleData;
use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn cplx<R: Rng>(rng: &mut R, re: (f64, f64), im: (f64, f64)) -> C64 {
    C64::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

/// A generic valid system: complex δ and α_j, x off the real axis, y and z of order one.
pub fn random_system<R: Rng>(rng: &mut R) -> FuchsianSystem {
    loop {
        let spec = SystemSpec {
            delta: cplx(rng, (-0.9, 0.9), (-0.3, 0.3)),
            alpha: [(); 3].map(|_| cplx(rng, (0.05, 0.45), (-0.2, 0.2))),
            x: cplx(rng, (0.2, 0.8), (-0.6, 0.6)),
            y: cplx(rng, (-1.0, 1.5), (-1.0, 1.0)),
            z: cplx(rng, (-1.0, 1.0), (-1.0, 1.0)),
            kappa: cplx(rng, (0.5, 1.5), (-0.5, 0.5)),
        };
        if let Ok(s) = FuchsianSystem::new(spec) {
            if !s.near_resonant && (s.y - s.x).norm() > 0.05 && s.y.norm() > 0.05 && (s.y - 1.0).norm() > 0.05 {
                return s;
            }
        }
    }
}

/// Well-scaled systems for loop transport: poles ordered left to right above
/// the base point, y above the real axis and small z, so that the monodromy
/// entries stay of moderate size.
pub fn monodromy_system<R: Rng>(rng: &mut R) -> FuchsianSystem {
    loop {
        let spec = SystemSpec {
            delta: cplx(rng, (0.1, 0.4), (-0.05, 0.05)),
            alpha: [(); 3].map(|_| cplx(rng, (0.1, 0.4), (-0.05, 0.05))),
            x: cplx(rng, (0.35, 0.65), (-0.3, 0.3)),
            y: cplx(rng, (0.2, 0.8), (0.3, 0.7)),
            z: cplx(rng, (-0.1, 0.1), (-0.1, 0.1)),
            kappa: C64::new(1.0, 0.0),
        };
        if let Ok(s) = FuchsianSystem::new(spec) {
            if (s.y - s.x).norm() > 0.05 {
                return s;
            }
        }
    }
}

/// α = (0.1, 0.2, 0.15), n = 1, s₁ = 1, with s₃ chosen so that Δ₂ vanishes at a = ½.
pub fn n1_reducible() -> ReducibleData {
    let c = |v: f64| C64::new(v, 0.0);
    let s3 = C64::new(-0.0577640290326062950446, 0.0187686707664632192595);
    ReducibleData::new([c(0.1), c(0.2), c(0.15)], 1, c(0.5), c(1.0), s3).expect("valid fixture")
}

/// α = ¼ each, n = 0, a = ½, s₁ = s₃ = 1 (δ = −¾, s₂ = 2).
pub fn quarter_reducible() -> ReducibleData {
    let c = |v: f64| C64::new(v, 0.0);
    ReducibleData::new([c(0.25); 3], 0, c(0.5), c(1.0), c(1.0)).expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_system(&mut rng(7));
        let b = random_system(&mut rng(7));
        assert_eq!(a, b);
        let m = monodromy_system(&mut rng(3));
        assert!(m.x.re > 0.0 && m.x.re < 1.0 && m.y.im > 0.0);
    }
}
