//! Blocklength and error-probability sweeps emitting plot-ready CSV.

use std::fmt::Write as _;

use crate::bound::aadr_lower_bound;
use crate::fbl_rate::FblConfig;
use crate::montecarlo::{estimate_aadr, estimate_shannon};
use crate::quadrature::aadr_gcq;
use crate::{Error, Result};

use super::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    Blocklength,
    Epsilon,
}

impl SweepKey {
    pub fn column(self) -> &'static str {
        match self {
            SweepKey::Blocklength => "M",
            SweepKey::Epsilon => "epsilon",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub blocklength: u64,
    pub epsilon: f64,
    pub shannon_mc: f64,
    pub aadr_mc: f64,
    pub aadr_mc_stderr: f64,
    pub aadr_gcq: f64,
    pub aadr_lb: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub key: SweepKey,
    pub rows: Vec<SweepRow>,
}

pub const CSV_COLUMNS: [&str; 5] = [
    "shannon_mc",
    "aadr_mc",
    "aadr_mc_stderr",
    "aadr_gcq",
    "aadr_lb",
];

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.key.column());
        for c in CSV_COLUMNS {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for r in &self.rows {
            match self.key {
                SweepKey::Blocklength => write!(out, "{}", r.blocklength).unwrap(),
                SweepKey::Epsilon => out.push_str(&format_sig(r.epsilon)),
            }
            for v in [
                r.shannon_mc,
                r.aadr_mc,
                r.aadr_mc_stderr,
                r.aadr_gcq,
                r.aadr_lb,
            ] {
                out.push(',');
                out.push_str(&format_sig(v));
            }
            out.push('\n');
        }
        out
    }

    /// Fixed-width text rendering for terminals.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{:>10} {:>12} {:>12} {:>10} {:>12} {:>12}\n",
            self.key.column(),
            "shannon_mc",
            "aadr_mc",
            "stderr",
            "aadr_gcq",
            "aadr_lb"
        );
        for r in &self.rows {
            let key = match self.key {
                SweepKey::Blocklength => r.blocklength.to_string(),
                SweepKey::Epsilon => format!("{:.0e}", r.epsilon),
            };
            writeln!(
                out,
                "{key:>10} {:>12.6} {:>12.6} {:>10.2e} {:>12.6} {:>12.6}",
                r.shannon_mc, r.aadr_mc, r.aadr_mc_stderr, r.aadr_gcq, r.aadr_lb
            )
            .unwrap();
        }
        out
    }
}

/// Formats with 12 significant digits, positional notation where it stays
/// compact and exponent notation otherwise.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

fn evaluate(cfg: &RunConfig, fbl: FblConfig, shannon_mc: f64) -> Result<SweepRow> {
    let consts = cfg.constants()?;
    let est = &cfg.estimators;
    let mc = estimate_aadr(&cfg.airspace, &consts, &fbl, est.monte_carlo())?;
    let gcq = aadr_gcq(&cfg.airspace, &consts, &fbl, est.n_theta, est.n_dist)?;
    let lb = aadr_lower_bound(&cfg.airspace, &consts, &fbl)?;
    Ok(SweepRow {
        blocklength: fbl.blocklength,
        epsilon: fbl.epsilon,
        shannon_mc,
        aadr_mc: mc.mean,
        aadr_mc_stderr: mc.std_error,
        aadr_gcq: gcq,
        aadr_lb: lb,
    })
}

fn shannon_column(cfg: &RunConfig) -> Result<f64> {
    let consts = cfg.constants()?;
    Ok(estimate_shannon(&cfg.airspace, &consts, cfg.estimators.monte_carlo())?.mean)
}

/// One row per blocklength at the configured epsilon. Every row reuses the
/// same seed, so the Monte Carlo columns share their sample positions.
pub fn sweep_blocklength(cfg: &RunConfig, m_values: &[u64]) -> Result<SweepTable> {
    cfg.validate()?;
    if m_values.is_empty() {
        return Err(Error::Config("blocklength list is empty".into()));
    }
    if let Some(&bad) = m_values.iter().find(|&&m| m == 0) {
        return Err(Error::domain("blocklength", bad as f64, "M >= 1"));
    }
    let shannon = shannon_column(cfg)?;
    let rows = m_values
        .iter()
        .map(|&m| evaluate(cfg, FblConfig::new(m, cfg.fbl.epsilon)?, shannon))
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        key: SweepKey::Blocklength,
        rows,
    })
}

/// One row per epsilon at the configured blocklength.
pub fn sweep_epsilon(cfg: &RunConfig, eps_values: &[f64]) -> Result<SweepTable> {
    cfg.validate()?;
    if eps_values.is_empty() {
        return Err(Error::Config("epsilon list is empty".into()));
    }
    if let Some(&bad) = eps_values.iter().find(|&&e| !(e > 0.0 && e < 0.5)) {
        return Err(Error::domain("epsilon", bad, "0 < epsilon < 0.5"));
    }
    let shannon = shannon_column(cfg)?;
    let rows = eps_values
        .iter()
        .map(|&e| evaluate(cfg, FblConfig::new(cfg.fbl.blocklength, e)?, shannon))
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        key: SweepKey::Epsilon,
        rows,
    })
}

pub fn default_blocklengths() -> Vec<u64> {
    (1..=10).map(|k| 100 * k).collect()
}

pub fn default_epsilons() -> Vec<f64> {
    (3..=12).rev().map(|k| 10f64.powi(-k)).collect()
}
