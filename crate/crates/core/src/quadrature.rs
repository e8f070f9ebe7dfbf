//! Gauss-Legendre rules and the nested ("GCQ") evaluation of the AADR double
//! integral over elevation and distance.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, OnceLock, RwLock};

use crate::channel::DerivedConstants;
use crate::fbl_rate::FblConfig;
use crate::geometry::Airspace;
use crate::{Error, Result};

pub const MAX_ORDER: usize = 1000;

/// Default `N1 = N2`.
pub const DEFAULT_ORDER: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    /// Zeros of `P_N`, ascending.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Evaluates `(P_n(x), P_n'(x))` through the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    pub fn legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("order", 0.0, "order >= 1"));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            // Tricomi initial guess, descending from near +1.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= f64::EPSILON {
                    break;
                }
            }
            let dp = legendre_with_derivative(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(QuadratureRule {
            order,
            nodes,
            weights,
        })
    }

    /// Cached rule for `order`, shared across threads.
    pub fn cached(order: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(rule) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&order) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(Self::legendre(order)?);
        cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(order, Arc::clone(&rule));
        Ok(rule)
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(half * t + mid))
            .sum();
        half * sum
    }
}

/// Expectation of `integrand(snr)` over the airspace by an `n_theta x n_dist`
/// tensor Gauss-Legendre rule.
///
/// The inner sum runs over elevation on `[theta_min, 90]` with weight
/// `x^2 * integrand`, the outer one over distance on `[r_min, r_max]`, and the
/// result is scaled by `(3/4) (r_max - r_min) / (r_max^3 - r_min^3)`.
pub fn average_over_airspace<F>(
    space: &Airspace,
    consts: &DerivedConstants,
    n_theta: usize,
    n_dist: usize,
    integrand: F,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    space.validate()?;
    let theta_rule = QuadratureRule::cached(n_theta)?;
    let dist_rule = QuadratureRule::cached(n_dist)?;

    let t_half = 0.5 * space.theta_span();
    let t_mid = 0.5 * (90.0 + space.theta_min);
    let d_half = 0.5 * (space.r_max - space.r_min);
    let d_mid = 0.5 * (space.r_max + space.r_min);

    let mut outer = 0.0;
    for (&g, &k) in dist_rule.nodes.iter().zip(&dist_rule.weights) {
        let x = d_half * g + d_mid;
        let inner: f64 = theta_rule
            .nodes
            .iter()
            .zip(&theta_rule.weights)
            .map(|(&t, &l)| l * x * x * integrand(consts.snr_unchecked(t_half * t + t_mid, x)))
            .sum();
        outer += k * inner;
    }
    let cube_span = space.r_max.powi(3) - space.r_min.powi(3);
    Ok(0.75 * (space.r_max - space.r_min) / cube_span * outer)
}

/// Nested Gauss-Legendre approximation of the average achievable data rate.
pub fn aadr_gcq(
    space: &Airspace,
    consts: &DerivedConstants,
    cfg: &FblConfig,
    n_theta: usize,
    n_dist: usize,
) -> Result<f64> {
    cfg.validate()?;
    let model = cfg.rate_model();
    average_over_airspace(space, consts, n_theta, n_dist, |g| model.rate(g))
}

/// Same tensor rule applied to `log2(1 + snr)`.
pub fn shannon_gcq(
    space: &Airspace,
    consts: &DerivedConstants,
    n_theta: usize,
    n_dist: usize,
) -> Result<f64> {
    average_over_airspace(space, consts, n_theta, n_dist, |g| g.ln_1p() / LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{LinkBudget, Scenario};

    #[test]
    fn low_order_rules() {
        let r1 = QuadratureRule::legendre(1).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert_eq!(r1.weights, vec![2.0]);

        let r2 = QuadratureRule::legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!(r2.weights.iter().all(|w| (w - 1.0).abs() < 1e-15));

        let r3 = QuadratureRule::legendre(3).unwrap();
        let s = (0.6f64).sqrt();
        assert!((r3.nodes[0] + s).abs() < 1e-15);
        assert_eq!(r3.nodes[1], 0.0);
        assert!((r3.nodes[2] - s).abs() < 1e-15);
        assert!((r3.weights[0] - 5.0 / 9.0).abs() < 1e-15);
        assert!((r3.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((r3.weights[2] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn order_limits() {
        assert!(QuadratureRule::legendre(0).is_err());
        assert!(matches!(
            QuadratureRule::legendre(1001),
            Err(Error::OrderTooLarge(1001))
        ));
        let big = QuadratureRule::legendre(1000).unwrap();
        assert!((big.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nodes_are_legendre_zeros() {
        for n in [5, 17, 64, 200] {
            let rule = QuadratureRule::legendre(n).unwrap();
            for (i, &x) in rule.nodes.iter().enumerate() {
                assert!(legendre_with_derivative(n, x).0.abs() < 1e-14 * n as f64);
                assert!(rule.weights[i] > 0.0);
                assert!((x + rule.nodes[n - 1 - i]).abs() < 1e-15);
                if i > 0 {
                    assert!(x > rule.nodes[i - 1]);
                }
            }
        }
    }

    #[test]
    fn integrate_basics() {
        let r = QuadratureRule::legendre(5).unwrap();
        assert!((r.integrate(|_| 1.0, 2.0, 7.5) - 5.5).abs() < 1e-14);
        let r2 = QuadratureRule::legendre(2).unwrap();
        assert!((r2.integrate(|x| x.powi(3), 0.0, 1.0) - 0.25).abs() < 1e-16);
        let r8 = QuadratureRule::legendre(8).unwrap();
        let e = r8.integrate(f64::exp, 0.0, 1.0);
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn cached_rules_match_fresh() {
        let a = QuadratureRule::cached(12).unwrap();
        let b = QuadratureRule::cached(12).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, QuadratureRule::legendre(12).unwrap());
    }

    fn setup() -> (Airspace, DerivedConstants) {
        let space = Airspace::new(250.0, 400.0, 45.0).unwrap();
        let c = DerivedConstants::derive(&Scenario::dense_urban(), &LinkBudget::default()).unwrap();
        (space, c)
    }

    #[test]
    fn penalty_free_reduces_to_shannon() {
        let (space, c) = setup();
        let cfg = FblConfig::new(300, 0.5).unwrap();
        let a = aadr_gcq(&space, &c, &cfg, 20, 20).unwrap();
        let s = shannon_gcq(&space, &c, 20, 20).unwrap();
        assert_eq!(a, s);
    }

    #[test]
    fn self_convergence() {
        let (space, c) = setup();
        let cfg = FblConfig::new(500, 1e-9).unwrap();
        let a30 = aadr_gcq(&space, &c, &cfg, 30, 30).unwrap();
        let a60 = aadr_gcq(&space, &c, &cfg, 60, 60).unwrap();
        assert!((a30 - a60).abs() <= 1e-8);
    }

    #[test]
    fn averaging_a_constant_gives_the_constant() {
        let (space, c) = setup();
        let v = average_over_airspace(&space, &c, 7, 9, |_| 3.5).unwrap();
        assert!((v - 3.5).abs() < 1e-13);
    }
}
