//! Exponential integral `Ei(x) = -PV int_{-x}^inf e^{-t}/t dt`.

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Positive zero of `Ei`, split as a double-double.
const ROOT_HI: f64 = 0.372_507_410_781_366_6;
const ROOT_LO: f64 = 1.314_018_341_438_602_8e-17;

const SERIES_LIMIT: f64 = 40.0;
const OVERFLOW_LIMIT: f64 = 700.0;
const ROOT_WINDOW: f64 = 0.05;

pub fn exp_integral_ei(x: f64) -> Result<f64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::domain("x", x, "x != 0"));
    }
    if x > OVERFLOW_LIMIT {
        return Err(Error::domain("x", x, "x <= 700"));
    }
    Ok(if (x - ROOT_HI).abs() < ROOT_WINDOW {
        near_root(x)
    } else if x > SERIES_LIMIT {
        asymptotic(x)
    } else if x >= -1.0 {
        series(x)
    } else {
        -e1_continued_fraction(-x)
    })
}

/// `gamma + ln|x| + sum_{k>=1} x^k / (k k!)`.
fn series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..500 {
        let k = k as f64;
        term *= x / k;
        let contrib = term / k;
        sum += contrib;
        if contrib.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + x.abs().ln() + sum
}

/// `e^x / x * sum_k k! / x^k`, truncated at the smallest term.
fn asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = term * k as f64 / x;
        if next >= term || next < 1e-17 {
            break;
        }
        term = next;
        sum += term;
    }
    x.exp() / x * sum
}

/// Modified Lentz evaluation of `E1(t)` for `t > 1`.
fn e1_continued_fraction(t: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = t + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-t).exp()
}

/// Expansion about the positive root `x0`, where `Ei(x0) = 0`:
/// `Ei(x) = ln(x / x0) + sum_k (x^k - x0^k) / (k k!)`, with the differences
/// factored through `x - x0` so relative accuracy survives near the zero.
fn near_root(x: f64) -> f64 {
    let delta = (x - ROOT_HI) - ROOT_LO;
    let log_part = (delta / ROOT_HI).ln_1p();
    // h_k = (x^k - x0^k) / (x - x0)
    let mut h = 1.0;
    let mut root_pow = 1.0;
    let mut factorial = 1.0;
    let mut sum = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        if k > 1 {
            root_pow *= ROOT_HI;
            h = x * h + root_pow;
        }
        factorial *= kf;
        let contrib = h / (kf * factorial);
        sum += contrib;
        if contrib < 1e-18 * sum {
            break;
        }
    }
    log_part + delta * sum
}
