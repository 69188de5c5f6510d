//! Run configuration. Every default lives here; `--show-defaults` prints
//! [`Config::default`] as TOML and a config file may override any subset.

use std::path::Path;

use qtopo_core::pw::golden;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QTOPO_OUT_DIR";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub spectrum: SpectrumConfig,
    pub classify: ClassifyConfig,
    pub geometry: GeometryConfig,
    pub evolve: EvolveConfig,
    pub gelfand: GelfandConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub u: String,
    pub lambda_max: f64,
    /// Largest allowed disagreement between the two solvers.
    pub tol: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { u: "u_a".into(), lambda_max: 25.0, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub u: String,
    pub tol: f64,
    pub probes: usize,
    pub seed: u64,
    /// Highest derivative order tested at the gluings.
    pub k_max: u32,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self { u: "u_a".into(), tol: 1e-8, probes: 8, seed: 1, k_max: 6 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub weyl: WeylConfig,
    pub distance: DistanceConfig,
    pub depth: DepthConfig,
    pub rough: RoughConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeylConfig {
    pub u: String,
    pub modes: usize,
    pub order: u32,
    pub n_min: usize,
}

impl Default for WeylConfig {
    fn default() -> Self {
        Self { u: "u_a".into(), modes: 500, order: 2, n_min: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistanceConfig {
    pub u: String,
    /// Angles accept `pi` multiples: `0`, `2pi`, `pi/2`, `1.5`.
    pub x: String,
    pub x_interval: u8,
    pub y: String,
    pub y_interval: u8,
    /// `1`, `2` or `both`.
    pub order: String,
    pub points: usize,
    /// Largest allowed relative gap between the grid route and the geodesic.
    pub tol: f64,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        Self {
            u: "u_a".into(),
            x: "0".into(),
            x_interval: 1,
            y: "2pi".into(),
            y_interval: 1,
            order: "both".into(),
            points: 512,
            tol: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DepthConfig {
    pub u: String,
    /// 1 for `−i d/dx`, 2 for `−d²/dx²`.
    pub order: u32,
    pub grids: Vec<usize>,
    pub depth: usize,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self { u: "u_b".into(), order: 2, grids: vec![128, 256, 512], depth: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoughConfig {
    /// `exp` for `b = e^{−rate·ω}`, `power` for `b = ω^{−rate}`.
    pub profile: String,
    pub rate: f64,
    pub modes: usize,
    pub k_max: u32,
}

impl Default for RoughConfig {
    fn default() -> Self {
        Self { profile: "power".into(), rate: 4.0, modes: 1000, k_max: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveConfig {
    pub p_max: u32,
    /// Twice the largest spin.
    pub two_j_max: u32,
    pub tau: f64,
    pub inertia: f64,
    /// Packet centre.
    pub start: String,
    pub delta: f64,
    /// `none` or `tilt`.
    pub potential: String,
    pub v: f64,
    pub tilt_center: String,
    /// Particle level added as a Born–Oppenheimer potential; negative for none.
    pub bo_level: i64,
    pub t_max: f64,
    pub steps: usize,
    /// `auto`, `dense` or `chebyshev`.
    pub method: String,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            p_max: golden::P_MAX,
            two_j_max: golden::TWO_J_MAX,
            tau: golden::TAU,
            inertia: golden::HEAVY_INERTIA,
            start: "u_a".into(),
            delta: golden::DELTA,
            potential: "none".into(),
            v: golden::TILT_STRENGTH,
            tilt_center: "u_b".into(),
            bo_level: -1,
            t_max: golden::HORIZON,
            steps: 20,
            method: "auto".into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GelfandConfig {
    pub joint: JointConfig,
    pub fuzzy: FuzzyConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JointConfig {
    /// `clock`, `diagonal` or `random`.
    pub family: String,
    /// Matrix size for `clock` and `random`.
    pub k: usize,
    /// Diagonal entries for `diagonal`.
    pub values: Vec<f64>,
    /// Family size and number of distinct characters for `random`.
    pub members: usize,
    pub distinct: usize,
    pub seed: u64,
}

impl Default for JointConfig {
    fn default() -> Self {
        Self { family: "clock".into(), k: 32, values: vec![], members: 3, distinct: 5, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FuzzyConfig {
    pub k: usize,
}

impl Default for FuzzyConfig {
    fn default() -> Self {
        Self { k: 5 }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    pub fn defaults_toml() -> String {
        to_toml(&Config::default())
    }
}

pub fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("configuration values serialize to TOML")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        assert_eq!(Config::parse(&Config::defaults_toml()).unwrap(), Config::default());
    }

    #[test]
    fn partial_file_keeps_other_defaults() {
        let c = Config::parse("[evolve]\ninertia = 1.0\n").unwrap();
        assert_eq!(c.evolve.inertia, 1.0);
        assert_eq!(c.evolve.tau, golden::TAU);
        assert_eq!(c.spectrum, SpectrumConfig::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(Config::parse("[evolve]\nintertia = 1.0\n"), Err(CliError::Input(_))));
    }
}
