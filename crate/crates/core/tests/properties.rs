use proptest::prelude::*;

use uav_aadr::bound::{exp_integral_ei, f_penalized, g_bound, g_inverse};
use uav_aadr::channel::{DerivedConstants, LinkBudget, Scenario};
use uav_aadr::cli::RunConfig;
use uav_aadr::fbl_rate::{achievable_rate, q_function, q_inverse, shannon_rate, FblConfig};
use uav_aadr::geometry::Airspace;

fn dense() -> DerivedConstants {
    DerivedConstants::derive(&Scenario::dense_urban(), &LinkBudget::default()).unwrap()
}

proptest! {
    #[test]
    fn finite_blocklength_rate_never_exceeds_capacity(
        log_gamma in -3.0f64..6.0,
        m in 1u64..5000,
        log_eps in -14.0f64..-1.0,
    ) {
        let gamma = 10f64.powf(log_gamma);
        let cfg = FblConfig::new(m, 10f64.powf(log_eps)).unwrap();
        prop_assert!(achievable_rate(gamma, &cfg).unwrap() <= shannon_rate(gamma).unwrap());
    }

    #[test]
    fn rate_grows_with_blocklength(log_gamma in -1.0f64..5.0, m in 1u64..5000) {
        let gamma = 10f64.powf(log_gamma);
        let a = achievable_rate(gamma, &FblConfig::new(m, 1e-9).unwrap()).unwrap();
        let b = achievable_rate(gamma, &FblConfig::new(m + 1, 1e-9).unwrap()).unwrap();
        prop_assert!(b > a);
    }

    #[test]
    fn q_inverse_roundtrip(log_p in -15.0f64..-0.302) {
        let p = 10f64.powf(log_p);
        let x = q_inverse(p).unwrap();
        prop_assert!(((q_function(x) - p) / p).abs() < 1e-12);
    }

    #[test]
    fn g_inverse_lands_on_root(log_q in -3.0f64..0.5) {
        let q = 10f64.powf(log_q);
        let x = g_inverse(q).unwrap();
        prop_assert!(((g_bound(x).unwrap() - q) / q).abs() < 1e-12);
        prop_assert!(f_penalized(x, q).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ei_derivative_matches_integrand(x in prop_oneof![-30.0f64..-0.01, 0.01f64..30.0]) {
        let h = 1e-5 * x.abs();
        let fd = (exp_integral_ei(x + h).unwrap() - exp_integral_ei(x - h).unwrap()) / (2.0 * h);
        let exact = x.exp() / x;
        prop_assert!(((fd - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn distance_cdf_is_monotone(r in 1.0f64..500.0, width in 1.0f64..2000.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let space = Airspace::new(r, r + width, 30.0).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x = |t: f64| r + t * width;
        prop_assert!(space.cdf_distance(x(lo)).unwrap() <= space.cdf_distance(x(hi)).unwrap());
    }

    #[test]
    fn sampled_positions_stay_inside(u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let space = Airspace::new(100.0, 400.0, 45.0).unwrap();
        let p = space.position_from_uniforms(u, v);
        prop_assert!((100.0..=400.0).contains(&p.d));
        prop_assert!((45.0..=90.0).contains(&p.theta));
    }

    #[test]
    fn snr_falls_with_distance_and_rises_with_elevation(
        d in 50.0f64..1000.0, dd in 1.0f64..100.0, theta in 10.0f64..89.0, dt in 0.1f64..1.0,
    ) {
        let c = dense();
        let s = c.snr(theta, d).unwrap();
        prop_assert!(c.snr(theta, d + dd).unwrap() < s);
        prop_assert!(c.snr(theta + dt, d).unwrap() >= s);
    }

    #[test]
    fn config_toml_round_trip(seed in 0..=i64::MAX as u64, m in 1u64..10_000, log_eps in -12.0f64..-1.0, n in 1usize..200) {
        let mut cfg = RunConfig::suburban();
        cfg.estimators.seed = seed;
        cfg.estimators.n_theta = n;
        cfg.fbl.blocklength = m;
        cfg.fbl.epsilon = 10f64.powf(log_eps);
        let back = RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn seeds_beyond_toml_range_are_rejected(seed in (i64::MAX as u64 + 1)..=u64::MAX) {
        let mut cfg = RunConfig::dense_urban();
        cfg.estimators.seed = seed;
        prop_assert!(cfg.validate().is_err());
    }
}
