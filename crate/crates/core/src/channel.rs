//! Elevation-dependent air-to-ground channel.
//!
//! The probability of line of sight follows a sigmoid in the elevation angle,
//! and the mean path loss mixes the LoS and NLoS excess losses with that
//! probability on top of free-space loss. Everything is expressed in degrees.

use std::f64::consts::{LN_10, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Environment constants of the LoS-probability model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub a: f64,
    /// Per degree.
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
}

impl Scenario {
    pub fn dense_urban() -> Self {
        Scenario {
            name: "dense_urban".into(),
            a: 12.08,
            b: 0.11,
            eta_los_db: 1.6,
            eta_nlos_db: 23.0,
        }
    }

    pub fn suburban() -> Self {
        Scenario {
            name: "suburban".into(),
            a: 4.88,
            b: 0.43,
            eta_los_db: 0.1,
            eta_nlos_db: 21.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::domain("a", self.a, "a > 0"));
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::domain("b", self.b, "b > 0"));
        }
        if !(self.eta_nlos_db > self.eta_los_db) {
            return Err(Error::Config(format!(
                "eta_nlos_db ({}) must exceed eta_los_db ({})",
                self.eta_nlos_db, self.eta_los_db
            )));
        }
        Ok(())
    }

    pub fn los_probability(&self, theta: f64) -> Result<f64> {
        check_elevation(theta)?;
        Ok(sigmoid(self.a, self.b, theta))
    }
}

fn sigmoid(a: f64, b: f64, theta: f64) -> f64 {
    1.0 / (1.0 + a * (-b * (theta - a)).exp())
}

fn check_elevation(theta: f64) -> Result<()> {
    if (0.0..=90.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::domain("theta", theta, "0 <= theta <= 90"))
    }
}

/// How `tx_power` is quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerUnit {
    #[default]
    Dbw,
    Dbm,
}

/// Whether the noise density is integrated over the bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseBasis {
    /// `sigma^2 = psd + 10 log10(B)`.
    #[default]
    FullBand,
    /// The density value is used as the noise power directly.
    PerHz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkBudget {
    pub tx_power: f64,
    #[serde(default)]
    pub tx_power_unit: PowerUnit,
    pub noise_psd_dbm_hz: f64,
    #[serde(default)]
    pub noise_basis: NoiseBasis,
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub light_speed_m_s: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        LinkBudget {
            tx_power: -20.0,
            tx_power_unit: PowerUnit::Dbw,
            noise_psd_dbm_hz: -173.0,
            noise_basis: NoiseBasis::FullBand,
            bandwidth_hz: 1e6,
            carrier_hz: 2.5e9,
            light_speed_m_s: 3e8,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::domain("bandwidth_hz", self.bandwidth_hz, "B > 0"));
        }
        if !(self.carrier_hz > 0.0 && self.carrier_hz.is_finite()) {
            return Err(Error::domain("carrier_hz", self.carrier_hz, "f_c > 0"));
        }
        if !(self.light_speed_m_s > 0.0 && self.light_speed_m_s.is_finite()) {
            return Err(Error::domain(
                "light_speed_m_s",
                self.light_speed_m_s,
                "c > 0",
            ));
        }
        if !self.tx_power.is_finite() || !self.noise_psd_dbm_hz.is_finite() {
            return Err(Error::Config("power levels must be finite".into()));
        }
        Ok(())
    }

    pub fn tx_power_dbw(&self) -> f64 {
        match self.tx_power_unit {
            PowerUnit::Dbw => self.tx_power,
            PowerUnit::Dbm => self.tx_power - 30.0,
        }
    }

    pub fn noise_power_dbw(&self) -> f64 {
        let dbm = match self.noise_basis {
            NoiseBasis::FullBand => self.noise_psd_dbm_hz + 10.0 * self.bandwidth_hz.log10(),
            NoiseBasis::PerHz => self.noise_psd_dbm_hz,
        };
        dbm - 30.0
    }

    /// Free-space term `20 log10(4 pi f_c / c)` in dB.
    pub fn free_space_db(&self) -> f64 {
        20.0 * (4.0 * PI * self.carrier_hz / self.light_speed_m_s).log10()
    }
}

/// Constants shared by every path-loss and SNR evaluation of one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub a_env: f64,
    pub b_env: f64,
    /// `eta_los - eta_nlos`, negative.
    pub a_db: f64,
    pub c_db: f64,
    /// `-a_db ln(10) / 10`, positive.
    pub a_tilde: f64,
    /// Linear `P / sigma^2 * 10^(-c_db / 10)`.
    pub c_tilde: f64,
}

impl DerivedConstants {
    pub fn derive(scenario: &Scenario, link: &LinkBudget) -> Result<Self> {
        scenario.validate()?;
        link.validate()?;
        let a_db = scenario.eta_los_db - scenario.eta_nlos_db;
        if a_db >= 0.0 {
            return Err(Error::Config(format!(
                "LoS/NLoS loss difference must be negative, got {a_db} dB"
            )));
        }
        let c_db = link.free_space_db() + scenario.eta_nlos_db;
        let a_tilde = -a_db * LN_10 / 10.0;
        let c_tilde = 10f64.powf((link.tx_power_dbw() - link.noise_power_dbw() - c_db) / 10.0);
        Ok(DerivedConstants {
            a_env: scenario.a,
            b_env: scenario.b,
            a_db,
            c_db,
            a_tilde,
            c_tilde,
        })
    }

    /// LoS probability without range checks, for inner loops.
    #[inline]
    pub fn los_weight(&self, theta: f64) -> f64 {
        sigmoid(self.a_env, self.b_env, theta)
    }

    pub fn mean_path_loss_db(&self, theta: f64, d: f64) -> Result<f64> {
        check_link_point(theta, d)?;
        Ok(self.a_db * self.los_weight(theta) + 20.0 * d.log10() + self.c_db)
    }

    pub fn snr(&self, theta: f64, d: f64) -> Result<f64> {
        check_link_point(theta, d)?;
        Ok(self.snr_unchecked(theta, d))
    }

    #[inline]
    pub fn snr_unchecked(&self, theta: f64, d: f64) -> f64 {
        self.c_tilde / (d * d) * (self.a_tilde * self.los_weight(theta)).exp()
    }

    /// `exp(A~ / (1 + a exp(a b)))`: the elevation factor of the SNR at `theta = 0`.
    pub fn horizon_gain(&self) -> f64 {
        (self.a_tilde / (1.0 + self.a_env * (self.a_env * self.b_env).exp())).exp()
    }

    /// Smallest SNR over `theta in [0, 90]` at distance `d`, attained at the horizon.
    pub fn min_snr(&self, d: f64) -> Result<f64> {
        self.snr(0.0, d)
    }
}

fn check_link_point(theta: f64, d: f64) -> Result<()> {
    check_elevation(theta)?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "d > 0"));
    }
    Ok(())
}
