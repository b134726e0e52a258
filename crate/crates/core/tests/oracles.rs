//! Frozen reference values computed independently at high precision.

use heunrh::fixtures::{n1_reducible, quarter_reducible};
use heunrh::heun_reduction::{accessory_from_c0, reduce};
use heunrh::monodromy::reducible_s2;
use heunrh::pole_matrices::limit_regular;
use heunrh::reducible_rh::{heun_locus, moments, solve_rn, SearchRegion};
use heunrh::C64;

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

// mpmath at 40 digits: φ_k for α = ¼ each, n = 0, a = ½, s₁ = s₃ = 1.
const PHI_QUARTER: [(f64, f64); 4] = [
    (0.01348381502970948391669839, -0.01348381502970948391669839),
    (0.003228989065402074618928548, -0.01025482596430740929776985),
    (0.0009816865604504939661454824, -0.00800752345935582864498678),
    (0.0003370696419909764587658563, -0.00640483787286376549958334),
];

// Zero of π₁ for the n = 1 fixture at a = ½ (mpmath, 25 digits).
const PI1_ROOT: f64 = 0.1939488232687117078401466;

#[test]
fn quarter_moments() {
    let mt = moments(&quarter_reducible(), 4).unwrap();
    for (k, &(re, im)) in PHI_QUARTER.iter().enumerate() {
        let exact = C64::new(re, im);
        assert!((mt.phi[k] - exact).norm() <= 1e-12 * exact.norm(), "phi_{}: {}", k + 1, mt.phi[k]);
    }
}

#[test]
fn quarter_stokes_relation() {
    let rd = quarter_reducible();
    assert!((rd.s[1] - c(2.0)).norm() < 1e-14);
    assert!((reducible_s2([c(0.25); 3], c(-0.75), c(1.0), c(1.0)) - c(2.0)).norm() < 1e-14);
}

#[test]
fn n1_fixture_polynomial() {
    let rd = n1_reducible();
    let sol = solve_rn(&moments(&rd, 4).unwrap(), 1).unwrap();
    assert!((sol.p[0] + PI1_ROOT).norm() < 1e-12, "{}", sol.p[0]);
    let region = SearchRegion { re: [0.3, 0.7], im: [-0.2, 0.2], grid: 9 };
    let rep = heun_locus(&rd, &region).unwrap();
    let root = rep.roots.iter().find(|r| (r.a - 0.5).norm() < 1e-8).expect("a = 1/2");
    assert!((root.polynomial[0] + PI1_ROOT).norm() < 1e-10);
}

#[test]
fn accessory_quarter_example() {
    // α = ¼, δ = ¾, a = 2, c₀ = 0: ν = −5/4 by both the closed form and the limit system.
    let al = [c(0.25); 3];
    assert!((accessory_from_c0(c(0.0), c(2.0), c(0.75), al) - c(-1.25)).norm() < 1e-14);
    let hp = reduce(&limit_regular(c(2.0), c(0.0), c(0.75), al, c(1.0)).unwrap()).unwrap();
    assert!((hp.nu - c(-1.25)).norm() < 1e-12);
}
