//! Seeded Monte Carlo averages over random UAV positions.
//!
//! Samples are split into `shards`; shard `k` draws from a ChaCha8 stream
//! `k` keyed by the seed, so the shards never overlap and the result depends
//! only on `(seed, n_samples, shards)`, never on how many threads ran them.
//! Shard accumulators are merged in shard order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::DerivedConstants;
use crate::fbl_rate::FblConfig;
use crate::geometry::Airspace;
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SHARDS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_samples)`.
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McSettings {
    pub n_samples: usize,
    pub seed: u64,
    pub shards: usize,
}

impl McSettings {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        McSettings {
            n_samples,
            seed,
            shards: DEFAULT_SHARDS,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Accumulator) -> Accumulator {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64 / count as f64);
        Accumulator { count, mean, m2 }
    }
}

/// Averages `integrand(snr)` over `settings.n_samples` sampled positions.
pub fn estimate<F>(
    space: &Airspace,
    consts: &DerivedConstants,
    settings: McSettings,
    integrand: F,
) -> Result<McEstimate>
where
    F: Fn(f64) -> f64 + Sync,
{
    space.validate()?;
    let n = settings.n_samples;
    if n < 2 {
        return Err(Error::domain("n_samples", n as f64, "n >= 2"));
    }
    let shards = settings.shards.clamp(1, n);
    let base = n / shards;
    let extra = n % shards;

    let parts: Vec<Accumulator> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
            rng.set_stream(k as u64);
            let len = base + usize::from(k < extra);
            let mut acc = Accumulator::default();
            for _ in 0..len {
                let p = space.sample_position(&mut rng);
                acc.push(integrand(consts.snr_unchecked(p.theta, p.d)));
            }
            acc
        })
        .collect();

    let total = parts
        .into_iter()
        .fold(Accumulator::default(), Accumulator::merge);
    let variance = total.m2 / (total.count - 1) as f64;
    Ok(McEstimate {
        mean: total.mean,
        std_error: (variance.max(0.0) / total.count as f64).sqrt(),
        n_samples: total.count,
        seed: settings.seed,
    })
}

pub fn estimate_aadr(
    space: &Airspace,
    consts: &DerivedConstants,
    cfg: &FblConfig,
    settings: McSettings,
) -> Result<McEstimate> {
    cfg.validate()?;
    let model = cfg.rate_model();
    estimate(space, consts, settings, |g| model.rate(g))
}

pub fn estimate_shannon(
    space: &Airspace,
    consts: &DerivedConstants,
    settings: McSettings,
) -> Result<McEstimate> {
    estimate(space, consts, settings, |g| {
        g.ln_1p() / std::f64::consts::LN_2
    })
}

pub fn estimate_inverse_snr(
    space: &Airspace,
    consts: &DerivedConstants,
    settings: McSettings,
) -> Result<McEstimate> {
    estimate(space, consts, settings, |g| 1.0 / g)
}
