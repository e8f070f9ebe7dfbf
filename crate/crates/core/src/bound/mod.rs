//! Closed-form Jensen lower bound on the average achievable data rate.
//!
//! Writing the rate as `R(gamma) = f(1/gamma) / ln 2` with
//! `f(x) = ln(1 + 1/x) - q sqrt((2x + 1) / (x + 1)^2)`, `f` is decreasing and
//! convex on `(0, g^-1(q)]`, so `E[R] >= f(E[1/gamma]) / ln 2` whenever every
//! SNR in the airspace is at least `1 / g^-1(q)`. `E[1/gamma]` has a closed
//! form in terms of the exponential integral.

mod expint;

use std::f64::consts::LN_2;

pub use expint::exp_integral_ei;

use crate::channel::DerivedConstants;
use crate::fbl_rate::FblConfig;
use crate::geometry::Airspace;
use crate::{Error, Result};

/// Pole of `g2`.
pub const INV_SQRT_3: f64 = 0.577_350_269_189_625_8;

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(name, x, "> 0"))
    }
}

/// `f(x) = ln(1 + 1/x) - q sqrt(2x + 1) / (x + 1)`.
pub fn f_penalized(x: f64, q: f64) -> Result<f64> {
    check_positive("x", x)?;
    if !(q >= 0.0) {
        return Err(Error::domain("q", q, "q >= 0"));
    }
    Ok((1.0 / x).ln_1p() - q * (2.0 * x + 1.0).sqrt() / (x + 1.0))
}

/// First derivative of [`f_penalized`] in `x`.
pub fn f_penalized_prime(x: f64, q: f64) -> Result<f64> {
    check_positive("x", x)?;
    let x1 = x + 1.0;
    Ok(q * x / (x1 * x1 * (2.0 * x + 1.0).sqrt()) - 1.0 / (x * x1))
}

/// Second derivative of [`f_penalized`] in `x`.
pub fn f_penalized_second(x: f64, q: f64) -> Result<f64> {
    check_positive("x", x)?;
    let x1 = x + 1.0;
    let t = 2.0 * x + 1.0;
    let num = x1 * t.powf(2.5) - q * x * x * (3.0 * x * x - 1.0);
    Ok(num / (x * x * x1.powi(3) * t.powf(1.5)))
}

/// `g(x) = (x + 1) ln(1 + 1/x) / sqrt(2x + 1)`: `f(x) >= 0` iff `q <= g(x)`.
pub fn g_bound(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(g_unchecked(x))
}

fn g_unchecked(x: f64) -> f64 {
    (x + 1.0) * (1.0 / x).ln_1p() / (2.0 * x + 1.0).sqrt()
}

/// Solves `g(x) = q` by bracketed bisection. `g` is strictly decreasing from
/// `+inf` to `0`, so the root is unique.
pub fn g_inverse(q: f64) -> Result<f64> {
    check_positive("q", q)?;
    let mut lo = 1e-12;
    let mut hi = 1.0;
    let mut steps = 0;
    while g_unchecked(hi) > q {
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if steps > 200 {
            return Err(Error::Convergence("g_inverse"));
        }
    }
    steps = 0;
    while g_unchecked(lo) < q {
        hi = lo;
        lo *= 0.5;
        steps += 1;
        if steps > 200 {
            return Err(Error::Convergence("g_inverse"));
        }
    }
    for _ in 0..400 {
        let mid = if hi > 2.0 * lo {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if g_unchecked(mid) > q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g1(x) = (1 + x) sqrt(2x + 1) / (2 x^2)`; `f' < 0` wherever `q < g1(x)`.
pub fn appendix_g1(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok((1.0 + x) * (2.0 * x + 1.0).sqrt() / (2.0 * x * x))
}

/// `g2(x) = (x + 1)(2x + 1)^(5/2) / (2 x^2 (3x^2 - 1))` on `x > 1/sqrt(3)`;
/// `f'' > 0` wherever `q < g2(x)`.
pub fn appendix_g2(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    if x <= INV_SQRT_3 {
        return Err(Error::domain("x", x, "x > 1/sqrt(3)"));
    }
    let den = 2.0 * x * x * (3.0 * x * x - 1.0);
    if den <= 0.0 {
        return Err(Error::domain("x", x, "x > 1/sqrt(3)"));
    }
    Ok((x + 1.0) * (2.0 * x + 1.0).powf(2.5) / den)
}

/// Penalty coefficient, `g^-1(q)` and `d_max` for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundContext {
    pub q: f64,
    /// `+inf` when `q == 0`.
    pub g_inv_q: f64,
    /// Largest outer radius for which the convexity condition holds, in meters.
    pub d_max: f64,
}

impl BoundContext {
    pub fn new(consts: &DerivedConstants, cfg: &FblConfig) -> Result<Self> {
        cfg.validate()?;
        if cfg.epsilon > 0.5 {
            return Err(Error::domain("epsilon", cfg.epsilon, "epsilon <= 0.5"));
        }
        let q = cfg.penalty();
        let g_inv_q = if q == 0.0 {
            f64::INFINITY
        } else {
            g_inverse(q)?
        };
        let d_max = (consts.c_tilde * consts.horizon_gain() * g_inv_q).sqrt();
        Ok(BoundContext { q, g_inv_q, d_max })
    }
}

/// `sqrt(C~ exp(A~ / (1 + a e^{ab})) g^-1(q))`: the outer radius at which the
/// horizon SNR drops to `1 / g^-1(q)`.
pub fn d_max(consts: &DerivedConstants, cfg: &FblConfig) -> Result<f64> {
    Ok(BoundContext::new(consts, cfg)?.d_max)
}

/// `int_{r}^{D} x^4 dx = (D^5 - r^5) / 5`.
pub fn u_integral(space: &Airspace) -> f64 {
    (space.r_max.powi(5) - space.r_min.powi(5)) / 5.0
}

/// `int_{theta_min}^{90} exp(-A~ / (1 + a exp(-b (y - a)))) dy` in closed form.
///
/// Not to be confused with the channel dispersion.
pub fn v_integral(space: &Airspace, consts: &DerivedConstants) -> Result<f64> {
    let at = consts.a_tilde;
    let (a, b) = (consts.a_env, consts.b_env);
    // T(y) at y = s / A~ with s = 1 + w, w = a exp(-b (theta - a)). The
    // argument A~ - 1/y is formed as A~ w / s; the subtraction cancels badly
    // once the sigmoid saturates.
    let t = |theta: f64| -> Result<f64> {
        let w = a * (-b * (theta - a)).exp();
        let s = 1.0 + w;
        Ok(((-at).exp() * exp_integral_ei(at * w / s)? - exp_integral_ei(-at / s)?) / at)
    };
    Ok(at / b * (t(space.theta_min)? - t(90.0)?))
}

/// Closed-form `E[1/gamma]` over the airspace.
pub fn expected_inverse_snr(space: &Airspace, consts: &DerivedConstants) -> Result<f64> {
    space.validate()?;
    let cube_span = space.r_max.powi(3) - space.r_min.powi(3);
    let scale = 3.0 / (consts.c_tilde * space.theta_span() * cube_span);
    Ok(scale * u_integral(space) * v_integral(space, consts)?)
}

/// Jensen lower bound `f(E[1/gamma]) / ln 2` in bits per channel use.
///
/// Fails with [`Error::BoundInvalid`] when the airspace extends beyond `d_max`.
pub fn aadr_lower_bound(
    space: &Airspace,
    consts: &DerivedConstants,
    cfg: &FblConfig,
) -> Result<f64> {
    let ctx = BoundContext::new(consts, cfg)?;
    if space.r_max > ctx.d_max {
        return Err(Error::BoundInvalid {
            r_max: space.r_max,
            d_max: ctx.d_max,
        });
    }
    let mean_inverse = expected_inverse_snr(space, consts)?;
    Ok(f_penalized(mean_inverse, ctx.q)? / LN_2)
}
