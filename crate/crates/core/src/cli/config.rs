//! Versioned defaults. The built-in copy is `config/defaults.json`; a file
//! passed with `--config` replaces it wholesale and command-line flags
//! override individual values.

use crate::error::{HeunError, Result};
use crate::monodromy::LoopOptions;
use crate::reducible_rh::SearchRegion;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const CONFIG_VERSION: u32 = 1;
pub const DEFAULTS_JSON: &str = include_str!("../../config/defaults.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    pub pole_series: PoleSeriesDefaults,
    pub limit: LimitDefaults,
    pub monodromy: MonodromyDefaults,
    pub moments: MomentDefaults,
    pub heun_poly: HeunPolyDefaults,
    pub verify: VerifyDefaults,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleSeriesDefaults {
    /// Number of retained coefficients when `--order` is absent.
    pub depth: usize,
    pub alpha: [C64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitDefaults {
    pub kappa0: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyDefaults {
    pub anchor_radius: f64,
    pub radius_factor: f64,
    pub tol: f64,
}

impl MonodromyDefaults {
    pub fn loop_options(&self) -> LoopOptions {
        LoopOptions { anchor_radius: self.anchor_radius, base: None, radius_factor: self.radius_factor, tol: self.tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentDefaults {
    pub count: usize,
    pub gauss_jacobi_nodes: usize,
    pub adaptive_budget: usize,
    pub adaptive_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeunPolyDefaults {
    pub region: SearchRegion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDefaults {
    pub seed: u64,
    pub samples: usize,
    pub monodromy_samples: usize,
    pub tol: f64,
}

impl Config {
    pub fn builtin() -> Config {
        Config::from_json(DEFAULTS_JSON).expect("built-in defaults parse")
    }

    pub fn from_json(text: &str) -> Result<Config> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| HeunError::ConfigInvalid(e.to_string()))?;
        if cfg.version != CONFIG_VERSION {
            return Err(HeunError::ConfigInvalid(format!(
                "config version {} (this build reads version {CONFIG_VERSION})",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>) -> Result<Config> {
        match path {
            None => Ok(Config::builtin()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| HeunError::ConfigInvalid(format!("{}: {e}", p.display())))?;
                Config::from_json(&text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matches_library_defaults() {
        let cfg = Config::builtin();
        assert_eq!(cfg.monodromy.loop_options(), LoopOptions::default());
        assert_eq!(cfg.heun_poly.region, SearchRegion::default());
        assert_eq!(cfg.pole_series.depth, crate::pvi_series::DEFAULT_DEPTH);
    }

    #[test]
    fn version_and_unknown_keys_rejected() {
        let bumped = DEFAULTS_JSON.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(Config::from_json(&bumped), Err(HeunError::ConfigInvalid(_))));
        let extra = DEFAULTS_JSON.replacen("\"version\": 1,", "\"version\": 1, \"colour\": 3,", 1);
        assert!(matches!(Config::from_json(&extra), Err(HeunError::ConfigInvalid(_))));
    }
}
