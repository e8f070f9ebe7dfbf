//! Numerical checks of the properties the lower bound relies on: `f` is
//! nonnegative, decreasing and convex on `(0, g^-1(q)]`, `g` is decreasing,
//! and the auxiliary thresholds `g1`, `g2` dominate `g`.

use serde::Serialize;

use crate::bound::{appendix_g1, appendix_g2, f_penalized, g_bound, g_inverse, INV_SQRT_3};
use crate::Result;

/// Objective checked by the `f`-related properties, `(x, q) -> f(x)`.
pub type Objective = fn(f64, f64) -> f64;

fn penalized(x: f64, q: f64) -> f64 {
    f_penalized(x, q).unwrap_or(f64::NAN)
}

#[derive(Debug, Clone)]
pub struct LemmaSuite {
    pub q_values: Vec<f64>,
    pub points: usize,
    /// Decades spanned by the grid below `g^-1(q)`.
    pub decades: f64,
    pub nonnegativity_tol: f64,
    /// Upper end of the grids for `g`, `g1` and `g2`.
    pub g_grid_max: f64,
    objective: Objective,
}

impl Default for LemmaSuite {
    fn default() -> Self {
        LemmaSuite {
            q_values: vec![0.05, 0.2, 0.6],
            points: 256,
            decades: 6.0,
            nonnegativity_tol: 1e-12,
            g_grid_max: 1e3,
            objective: penalized,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub property: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub grid: Grid,
    pub tolerance: f64,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_x: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (l + (h - l) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

fn run_check(
    property: &'static str,
    q: Option<f64>,
    grid: (f64, f64),
    points: usize,
    tolerance: f64,
    holds: impl Fn(f64) -> bool,
) -> CheckResult {
    let xs = log_grid(grid.0, grid.1, points);
    let failed: Vec<f64> = xs.into_iter().filter(|&x| !holds(x)).collect();
    CheckResult {
        property,
        q,
        grid: Grid {
            lo: grid.0,
            hi: grid.1,
            points,
            spacing: "log",
        },
        tolerance,
        failures: failed.len(),
        first_failure_x: failed.first().copied(),
        passed: failed.is_empty(),
    }
}

impl LemmaSuite {
    /// Replaces `f` in the nonnegativity, monotonicity and convexity checks.
    /// Used to confirm the suite detects a broken objective.
    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn run(&self) -> Result<LemmaReport> {
        let f = self.objective;
        let n = self.points.max(2);
        let mut checks = Vec::new();
        for &q in &self.q_values {
            let x_hi = g_inverse(q)?;
            let grid = (x_hi * 10f64.powf(-self.decades), x_hi);
            let tol = self.nonnegativity_tol;
            checks.push(run_check("f_nonnegative", Some(q), grid, n, tol, |x| {
                f(x, q) >= -tol
            }));
            let beyond = (x_hi * (1.0 + 1e-6), x_hi * 10f64.powf(self.decades));
            checks.push(run_check(
                "f_negative_beyond_root",
                Some(q),
                beyond,
                n,
                0.0,
                |x| f(x, q) < 0.0,
            ));
            checks.push(run_check("f_decreasing", Some(q), grid, n, 0.0, |x| {
                let h = 1e-4 * x;
                (f(x + h, q) - f(x - h, q)) / (2.0 * h) < 0.0
            }));
            checks.push(run_check("f_convex", Some(q), grid, n, 0.0, |x| {
                let h = 1e-3 * x;
                (f(x + h, q) - 2.0 * f(x, q) + f(x - h, q)) / (h * h) > 0.0
            }));
        }

        let g = |x: f64| g_bound(x).unwrap_or(f64::NAN);
        let g_grid = (self.g_grid_max * 10f64.powf(-9.0), self.g_grid_max);
        checks.push(run_check("g_decreasing", None, g_grid, n, 0.0, |x| {
            let h = 1e-4 * x;
            (g(x + h) - g(x - h)) / (2.0 * h) < 0.0
        }));
        checks.push(run_check("g1_dominates_g", None, g_grid, n, 0.0, |x| {
            appendix_g1(x).map(|v| v > g(x)).unwrap_or(false)
        }));
        let g2_grid = (INV_SQRT_3 * (1.0 + 1e-9), self.g_grid_max);
        checks.push(run_check("g2_dominates_g", None, g2_grid, n, 0.0, |x| {
            appendix_g2(x).map(|v| v > g(x)).unwrap_or(false)
        }));

        Ok(LemmaReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
        })
    }
}

pub fn verify_lemmas() -> Result<LemmaReport> {
    LemmaSuite::default().run()
}
