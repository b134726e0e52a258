//! Riemann–Hilbert tools for Heun equations through the Painlevé VI
//! isomonodromy problem.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod fuchsian;
pub mod heun_reduction;
pub mod monodromy;
pub mod numerics;
pub mod pole_matrices;
pub mod pvi_series;
pub mod reducible_rh;

pub use error::{HeunError, Result};
pub use num_complex::Complex64 as C64;
