//! Exponential-integral oracle: the convergent series
//! `Ei(x) = gamma + ln|x| + sum x^k / (k k!)` summed in 600-bit fixed point,
//! so the cancellation for negative `x` costs nothing visible in `f64`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const BITS: u32 = 600;

const EULER_GAMMA_DIGITS: &str = "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";

fn one() -> BigInt {
    BigInt::from(1) << BITS
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

/// Exact fixed-point image of a finite, nonzero `f64` with exponent above `-BITS`.
fn from_f64(x: f64) -> BigInt {
    let bits = x.abs().to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let shift = BITS as i64 + e;
    assert!(shift >= 0, "value too small for the oracle");
    let v = BigInt::from(mant) << (shift as usize);
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap() * 2f64.powi(-(BITS as i32))
}

fn euler_gamma() -> BigInt {
    let digits: BigInt = EULER_GAMMA_DIGITS.parse().unwrap();
    let ten = BigInt::from(10).pow(EULER_GAMMA_DIGITS.len() as u32);
    (digits << BITS) / ten
}

/// `2 atanh(z)` for `|z| < 1/2`.
fn two_atanh(z: &BigInt) -> BigInt {
    let z2 = mul(z, z);
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k: u32 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = mul(&power, &z2);
        k += 1;
    }
    sum * 2
}

fn ln_abs(x: f64) -> BigInt {
    let n = x.abs().log2().floor() as i32;
    // |x| = y * 2^n with y in [1, 2); both factors are exact dyadics.
    let y = from_f64(x.abs() / 2f64.powi(n));
    let z = div(&(&y - one()), &(&y + one()));
    let ln2 = two_atanh(&div(&one(), &(BigInt::from(3) << BITS)));
    two_atanh(&z) + ln2 * n
}

pub fn ei_series(x: f64) -> f64 {
    assert!(x != 0.0 && x.is_finite());
    let xf = from_f64(x);
    let mut term = one();
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    loop {
        term = mul(&term, &xf) / BigInt::from(k);
        if term.abs() <= BigInt::from(1) {
            break;
        }
        sum += &term / BigInt::from(k);
        k += 1;
    }
    to_f64(&(euler_gamma() + ln_abs(x) + sum))
}

#[cfg(test)]
mod self_check {
    #[test]
    fn reference_points() {
        // 40-digit references.
        assert!((super::ei_series(1.0) / 1.895_117_816_355_936_8 - 1.0).abs() < 1e-15);
        assert!((super::ei_series(-1.0) / -0.219_383_934_395_520_27 - 1.0).abs() < 1e-15);
    }
}
