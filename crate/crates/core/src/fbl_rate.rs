//! Finite-blocklength achievable rate (normal approximation) and the Gaussian
//! tail function pair it relies on.

use std::f64::consts::{LN_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::bound;
use crate::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Blocklength and target decoding error probability of one packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FblConfig {
    /// Channel uses per packet.
    pub blocklength: u64,
    /// Decoding error probability.
    pub epsilon: f64,
}

impl FblConfig {
    pub fn new(blocklength: u64, epsilon: f64) -> Result<Self> {
        let cfg = FblConfig {
            blocklength,
            epsilon,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocklength == 0 {
            return Err(Error::domain("blocklength", 0.0, "M >= 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::domain("epsilon", self.epsilon, "0 < epsilon < 1"));
        }
        Ok(())
    }

    /// Penalty coefficient `Q^-1(epsilon) / sqrt(M)`.
    pub fn penalty(&self) -> f64 {
        // epsilon is validated at construction; Q^-1 is total on (0, 1).
        q_inverse(self.epsilon).unwrap_or(f64::NAN) / (self.blocklength as f64).sqrt()
    }

    pub fn rate_model(&self) -> RateModel {
        RateModel {
            penalty: self.penalty(),
        }
    }
}

/// Precomputed rate map `gamma -> R(gamma)` for one [`FblConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateModel {
    pub penalty: f64,
}

impl RateModel {
    /// `log2(1 + gamma) - sqrt(V(gamma)) * penalty / ln 2`. Not clamped at zero.
    #[inline]
    pub fn rate(&self, gamma: f64) -> f64 {
        let root_dispersion = (gamma * (gamma + 2.0)).sqrt() / (1.0 + gamma);
        (gamma.ln_1p() - self.penalty * root_dispersion) / LN_2
    }
}

/// Upper tail of the standard normal distribution.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Inverse of [`q_function`] on `(0, 1)`.
pub fn q_inverse(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", p, "0 < p < 1"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // 1 - p is exact here; refining against Q(x) ~ 1 would not be.
        return Ok(-q_inverse(1.0 - p)?);
    }
    let mut x = -normal_quantile_as241(p);
    // Halley refinement against the erfc-based tail.
    for _ in 0..2 {
        let err = q_function(x) - p;
        let density = INV_SQRT_2PI * (-0.5 * x * x).exp();
        if density == 0.0 {
            break;
        }
        let step = err / density;
        x += step / (1.0 - 0.5 * x * step);
    }
    Ok(x)
}

/// Wichura's AS 241 (PPND16) lower-tail normal quantile, ~1e-16 relative.
fn normal_quantile_as241(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let mut r = if q < 0.0 { p } else { 1.0 - p };
    r = (-r.ln()).sqrt();
    let val = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

fn poly(coeffs: &[f64; 8], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

const A: [f64; 8] = [
    3.387_132_872_796_366_5,
    1.331_416_678_917_843_8e2,
    1.971_590_950_306_551_3e3,
    1.373_169_376_550_946e4,
    4.592_195_393_154_987e4,
    6.726_577_092_700_87e4,
    3.343_057_558_358_813e4,
    2.509_080_928_730_122_7e3,
];
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091e1,
    6.871_870_074_920_579e2,
    5.394_196_021_424_751e3,
    2.121_379_430_158_659_7e4,
    3.930_789_580_009_271e4,
    2.872_908_573_572_194_3e4,
    5.226_495_278_852_545e3,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_5,
    4.630_337_846_156_546,
    5.769_497_221_460_691,
    3.647_848_324_763_204_5,
    1.270_458_252_452_368_4,
    2.417_807_251_774_506e-1,
    2.272_384_498_926_918_4e-2,
    7.745_450_142_783_414e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_759,
    1.676_384_830_183_803_8,
    6.897_673_349_851e-1,
    1.481_039_764_274_800_8e-1,
    1.519_866_656_361_645_7e-2,
    5.475_938_084_995_345e-4,
    1.050_750_071_644_416_9e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103,
    5.463_784_911_164_114,
    1.784_826_539_917_291_3,
    2.965_605_718_285_048_7e-1,
    2.653_218_952_657_612_4e-2,
    1.242_660_947_388_078_4e-3,
    2.711_555_568_743_487_6e-5,
    2.010_334_399_292_288_1e-7,
];
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_88e-1,
    1.369_298_809_227_358e-1,
    1.487_536_129_085_061_5e-2,
    7.868_691_311_456_133e-4,
    1.846_318_317_510_054_8e-5,
    1.421_511_758_316_446e-7,
    2.043_263_102_318_768e-15,
];

/// Channel dispersion `1 - (1 + gamma)^-2`.
pub fn dispersion(gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::domain("gamma", gamma, "gamma >= 0"));
    }
    Ok(1.0 - (1.0 + gamma).powi(-2))
}

pub fn shannon_rate(gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::domain("gamma", gamma, "gamma >= 0"));
    }
    Ok(gamma.ln_1p() / LN_2)
}

/// Normal-approximation achievable rate in bits per channel use.
///
/// Small SNRs can give a negative value; it is returned as is. See
/// [`min_snr_for_valid_rate`] for the region where the rate is nonnegative.
pub fn achievable_rate(gamma: f64, cfg: &FblConfig) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("gamma", gamma, "gamma > 0"));
    }
    cfg.validate()?;
    Ok(cfg.rate_model().rate(gamma))
}

/// SNR `1 / g^-1(q)` above which the rate is nonnegative and convex in `1/gamma`.
pub fn min_snr_for_valid_rate(cfg: &FblConfig) -> Result<f64> {
    cfg.validate()?;
    if cfg.epsilon >= 0.5 {
        return Err(Error::domain("epsilon", cfg.epsilon, "epsilon < 0.5"));
    }
    Ok(1.0 / bound::g_inverse(cfg.penalty())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bisection on the tail function, independent of the rational seed.
    fn q_inverse_bisect(p: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0f64, 40.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if q_function(mid) > p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn q_function_values() {
        assert_eq!(q_function(0.0), 0.5);
        assert!(q_function(40.0) < 1e-300);
        assert_eq!(q_function(-40.0), 1.0);
        // 40-digit erfc reference: Q(5.99781) = 9.999816235302354e-10.
        let v = q_function(5.99781);
        assert!((v / 9.999_816_235_302_354e-10 - 1.0).abs() < 1e-12, "{v:e}");
    }

    #[test]
    fn q_inverse_values() {
        assert_eq!(q_inverse(0.5).unwrap(), 0.0);
        let x = q_inverse(1e-9).unwrap();
        assert!((x - 5.997_807_015_007_687).abs() < 1e-12);
        assert!((x - q_inverse_bisect(1e-9)).abs() < 1e-12);
        for (p, want) in [
            (1e-12, 7.034_483_825_301_132),
            (1e-3, 3.090_232_306_167_813_5),
            (0.4, 0.253_347_103_135_799_8),
        ] {
            assert!((q_inverse(p).unwrap() - want).abs() < 1e-12);
        }
        for p in [1e-12, 1e-9, 1e-3, 0.4] {
            let rt = q_function(q_inverse(p).unwrap());
            assert!(((rt - p) / p).abs() <= 1e-10);
        }
        assert!(q_inverse(0.0).is_err());
        assert!(q_inverse(1.0).is_err());
        assert!(q_inverse(f64::NAN).is_err());
    }

    #[test]
    fn q_inverse_covers_extreme_tails() {
        for p in [1e-15, 1e-300, 0.999_999_999, 1.0 - 1e-15] {
            let x = q_inverse(p).unwrap();
            let b = if p > 0.5 {
                -q_inverse_bisect(1.0 - p)
            } else {
                q_inverse_bisect(p)
            };
            assert!((x - b).abs() < 1e-9, "p={p:e}: {x} vs {b}");
        }
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(0.0).unwrap(), 0.0);
        assert_eq!(dispersion(1.0).unwrap(), 0.75);
        assert!((dispersion(1e12).unwrap() - 1.0).abs() < 1e-15);
        assert!(dispersion(-0.1).is_err());
    }

    #[test]
    fn shannon_values() {
        assert_eq!(shannon_rate(0.0).unwrap(), 0.0);
        assert!((shannon_rate(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((shannon_rate(3.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn achievable_rate_reference() {
        let cfg = FblConfig::new(200, 1e-9).unwrap();
        // Term-by-term evaluation with an independent quantile.
        let gamma: f64 = 10.0;
        let v = 1.0 - (1.0 + gamma).powi(-2);
        let direct = (1.0 + gamma).log2() - (v / 200.0).sqrt() * q_inverse_bisect(1e-9) / LN_2;
        let r = achievable_rate(gamma, &cfg).unwrap();
        assert!((r - direct).abs() < 1e-12);
        // 40-digit reference: 2.850105258197306550...
        assert!((r - 2.850_105_258_197_306_5).abs() < 1e-12);
    }

    #[test]
    fn penalty_free_limits() {
        let half = FblConfig::new(100, 0.5).unwrap();
        for g in [0.1, 1.0, 37.0] {
            assert_eq!(achievable_rate(g, &half).unwrap(), shannon_rate(g).unwrap());
        }
        let big = FblConfig::new(u64::MAX / 2, 1e-9).unwrap();
        assert!((achievable_rate(5.0, &big).unwrap() - shannon_rate(5.0).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn low_snr_rate_is_negative_not_clamped() {
        let cfg = FblConfig::new(100, 1e-9).unwrap();
        assert!(achievable_rate(0.01, &cfg).unwrap() < 0.0);
        assert!(achievable_rate(0.0, &cfg).is_err());
    }

    #[test]
    fn rate_monotone_in_blocklength_and_epsilon() {
        let gammas = [0.7, 3.0, 50.0, 400.0];
        for &g in &gammas {
            let mut prev = f64::NEG_INFINITY;
            for m in (100..=1000).step_by(50) {
                let r = achievable_rate(g, &FblConfig::new(m, 1e-9).unwrap()).unwrap();
                assert!(r > prev);
                prev = r;
            }
            let mut prev = f64::NEG_INFINITY;
            for k in (2..=12).rev() {
                let eps = 10f64.powi(-k);
                let r = achievable_rate(g, &FblConfig::new(200, eps).unwrap()).unwrap();
                assert!(r > prev);
                assert!(r < shannon_rate(g).unwrap());
                prev = r;
            }
        }
    }

    #[test]
    fn validity_threshold() {
        let cfg = FblConfig::new(100, 1e-9).unwrap();
        let t = min_snr_for_valid_rate(&cfg).unwrap();
        // 1 / g^-1(0.59978...) from a 40-digit root solve.
        assert!((t - 0.595_884_291_306_705_2).abs() < 1e-10);
        assert!(achievable_rate(t, &cfg).unwrap().abs() < 1e-9);

        // Increasing on a log grid above the threshold.
        let mut prev = achievable_rate(t, &cfg).unwrap();
        for i in 1..=200 {
            let g = t * 10f64.powf(i as f64 * 0.02);
            let r = achievable_rate(g, &cfg).unwrap();
            assert!(r > prev && r >= 0.0);
            prev = r;
        }

        let near_half = FblConfig::new(100, 0.5 - 1e-9).unwrap();
        assert!(min_snr_for_valid_rate(&near_half).unwrap() < 1e-12);
        assert!(min_snr_for_valid_rate(&FblConfig::new(100, 0.5).unwrap()).is_err());
    }
}
