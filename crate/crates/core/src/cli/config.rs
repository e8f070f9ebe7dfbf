//! Run configuration: one TOML file with `scenario`, `link`, `airspace`,
//! `fbl` and `estimators` tables. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::{DerivedConstants, LinkBudget, Scenario};
use crate::fbl_rate::FblConfig;
use crate::geometry::Airspace;
use crate::montecarlo::{McSettings, DEFAULT_SAMPLES, DEFAULT_SHARDS};
use crate::quadrature::DEFAULT_ORDER;
use crate::{Error, Result};

pub const PRESET_NAMES: [&str; 2] = ["dense_urban", "suburban"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorSettings {
    /// Elevation quadrature order.
    pub n_theta: usize,
    /// Distance quadrature order.
    pub n_dist: usize,
    pub n_samples: usize,
    pub seed: u64,
    #[serde(default = "default_shards")]
    pub shards: usize,
}

fn default_shards() -> usize {
    DEFAULT_SHARDS
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        EstimatorSettings {
            n_theta: DEFAULT_ORDER,
            n_dist: DEFAULT_ORDER,
            n_samples: DEFAULT_SAMPLES,
            seed: 2019,
            shards: DEFAULT_SHARDS,
        }
    }
}

impl EstimatorSettings {
    pub fn monte_carlo(&self) -> McSettings {
        McSettings {
            n_samples: self.n_samples,
            seed: self.seed,
            shards: self.shards,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// CSV or report destination; standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub scenario: Scenario,
    pub link: LinkBudget,
    pub airspace: Airspace,
    pub fbl: FblConfig,
    #[serde(default)]
    pub estimators: EstimatorSettings,
}

impl RunConfig {
    pub fn dense_urban() -> Self {
        RunConfig {
            output: None,
            scenario: Scenario::dense_urban(),
            link: LinkBudget::default(),
            airspace: Airspace {
                r_min: 250.0,
                r_max: 400.0,
                theta_min: 45.0,
            },
            fbl: FblConfig {
                blocklength: 200,
                epsilon: 1e-9,
            },
            estimators: EstimatorSettings::default(),
        }
    }

    pub fn suburban() -> Self {
        RunConfig {
            scenario: Scenario::suburban(),
            airspace: Airspace {
                r_min: 250.0,
                r_max: 400.0,
                theta_min: 30.0,
            },
            ..Self::dense_urban()
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "dense_urban" => Ok(Self::dense_urban()),
            "suburban" => Ok(Self::suburban()),
            other => Err(Error::Config(format!(
                "unknown scenario preset `{other}` (expected one of {PRESET_NAMES:?})"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.link.validate()?;
        self.airspace.validate()?;
        self.fbl.validate()?;
        let e = &self.estimators;
        if e.n_theta == 0 || e.n_dist == 0 {
            return Err(Error::Config("quadrature orders must be >= 1".into()));
        }
        if e.n_samples < 2 {
            return Err(Error::Config("n_samples must be >= 2".into()));
        }
        if e.shards == 0 {
            return Err(Error::Config("shards must be >= 1".into()));
        }
        // TOML integers are signed 64-bit.
        if e.seed > i64::MAX as u64 {
            return Err(Error::Config(format!("seed must be <= {}", i64::MAX)));
        }
        DerivedConstants::derive(&self.scenario, &self.link)?;
        Ok(())
    }

    pub fn constants(&self) -> Result<DerivedConstants> {
        DerivedConstants::derive(&self.scenario, &self.link)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}
