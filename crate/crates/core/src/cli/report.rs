//! `d_max` and packet-size calculators.

use serde::Serialize;

use crate::bound::BoundContext;
use crate::{Error, Result};

use super::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct DmaxReport {
    pub scenario: String,
    pub blocklength: u64,
    pub epsilon: f64,
    pub q: f64,
    pub g_inv_q: f64,
    pub d_max_m: f64,
    pub r_max_m: f64,
    /// Whether the airspace lies inside `d_max`.
    pub satisfied: bool,
}

impl DmaxReport {
    pub fn summary(&self) -> String {
        format!(
            "{:<12} M={:<5} eps={:<8.1e} q={:.6} g^-1(q)={:.6} d_max={:.1} m  D={:.1} m  {}",
            self.scenario,
            self.blocklength,
            self.epsilon,
            self.q,
            self.g_inv_q,
            self.d_max_m,
            self.r_max_m,
            if self.satisfied { "ok" } else { "VIOLATED" }
        )
    }
}

pub fn report_dmax(cfg: &RunConfig) -> Result<DmaxReport> {
    cfg.validate()?;
    let ctx = BoundContext::new(&cfg.constants()?, &cfg.fbl)?;
    Ok(DmaxReport {
        scenario: cfg.scenario.name.clone(),
        blocklength: cfg.fbl.blocklength,
        epsilon: cfg.fbl.epsilon,
        q: ctx.q,
        g_inv_q: ctx.g_inv_q,
        d_max_m: ctx.d_max,
        r_max_m: cfg.airspace.r_max,
        satisfied: cfg.airspace.r_max <= ctx.d_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketSize {
    /// `B * T_max`.
    pub channel_uses: f64,
    /// `B * T_max * aadr`.
    pub bits: f64,
}

pub fn packet_size(bandwidth_hz: f64, t_max_s: f64, aadr: f64) -> Result<PacketSize> {
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(Error::domain("bandwidth_hz", bandwidth_hz, "B > 0"));
    }
    if !(t_max_s > 0.0 && t_max_s.is_finite()) {
        return Err(Error::domain("t_max", t_max_s, "T_max > 0"));
    }
    if !(aadr >= 0.0 && aadr.is_finite()) {
        return Err(Error::domain("aadr", aadr, "aadr >= 0"));
    }
    let channel_uses = bandwidth_hz * t_max_s;
    Ok(PacketSize {
        channel_uses,
        bits: channel_uses * aadr,
    })
}
