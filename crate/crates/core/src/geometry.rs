//! Admissible airspace of the UAV and the distribution of its position.
//!
//! The UAV lives between two inverted cones centred on the ground station:
//! distance `d` in `[r_min, r_max]` with density proportional to `d^2`, and
//! elevation `theta` uniform on `[theta_min, 90]` degrees, independent of `d`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Airspace {
    /// Inner radius in meters; the UAV never flies closer than this.
    pub r_min: f64,
    /// Outer radius in meters.
    pub r_max: f64,
    /// Minimum elevation angle in degrees.
    pub theta_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavPosition {
    /// Distance to the ground station in meters.
    pub d: f64,
    /// Elevation angle in degrees.
    pub theta: f64,
}

impl Airspace {
    pub fn new(r_min: f64, r_max: f64, theta_min: f64) -> Result<Self> {
        let space = Airspace {
            r_min,
            r_max,
            theta_min,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min.is_finite()) {
            return Err(Error::domain("r_min", self.r_min, "r_min > 0"));
        }
        if !(self.r_max > self.r_min && self.r_max.is_finite()) {
            return Err(Error::domain("r_max", self.r_max, "r_max > r_min"));
        }
        if !(0.0..90.0).contains(&self.theta_min) {
            return Err(Error::domain(
                "theta_min",
                self.theta_min,
                "0 <= theta_min < 90",
            ));
        }
        Ok(())
    }

    /// Width of the elevation support in degrees.
    pub fn theta_span(&self) -> f64 {
        90.0 - self.theta_min
    }

    fn cube_span(&self) -> f64 {
        self.r_max.powi(3) - self.r_min.powi(3)
    }

    fn check_distance(&self, x: f64) -> Result<()> {
        if (self.r_min..=self.r_max).contains(&x) {
            Ok(())
        } else {
            Err(Error::domain("distance", x, "r_min <= d <= r_max"))
        }
    }

    pub fn cdf_distance(&self, x: f64) -> Result<f64> {
        self.check_distance(x)?;
        Ok((x.powi(3) - self.r_min.powi(3)) / self.cube_span())
    }

    pub fn pdf_distance(&self, x: f64) -> Result<f64> {
        self.check_distance(x)?;
        Ok(3.0 * x * x / self.cube_span())
    }

    pub fn pdf_elevation(&self, theta: f64) -> Result<f64> {
        if !(self.theta_min..=90.0).contains(&theta) {
            return Err(Error::domain("theta", theta, "theta_min <= theta <= 90"));
        }
        Ok(1.0 / self.theta_span())
    }

    /// Maps a pair of uniforms on `[0, 1)` through the inverse marginal CDFs.
    pub fn position_from_uniforms(&self, u_dist: f64, u_theta: f64) -> UavPosition {
        let r3 = self.r_min.powi(3);
        let d = (r3 + u_dist * self.cube_span())
            .cbrt()
            .clamp(self.r_min, self.r_max);
        let theta = (self.theta_min + u_theta * self.theta_span()).min(90.0);
        UavPosition { d, theta }
    }

    pub fn sample_position<R: Rng + ?Sized>(&self, rng: &mut R) -> UavPosition {
        let u_dist: f64 = rng.gen();
        let u_theta: f64 = rng.gen();
        self.position_from_uniforms(u_dist, u_theta)
    }
}
