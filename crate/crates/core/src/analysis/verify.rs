//! Checks of the closed-form expansions and robustness figures, shared by
//! the `verify` command and the acceptance tests.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use super::curve::linear_grid;
use super::family::{ErrorAxis, Family, GateKind, Scheme};
use super::fit::{fit_leading_order, SeriesFit, DEFAULT_POINTS, ORDER2_WINDOW, ORDER6_WINDOW};
use super::range::{robust_range, DEFAULT_SEARCH_MAX};
use crate::error::Result;

pub const NAIVE_COEFFICIENT_TOL: f64 = 0.01;
pub const BB1_COEFFICIENT_TOL: f64 = 0.02;
pub const FLATNESS_BOUND: f64 = 1e-6;
pub const FLATNESS_RANGE: f64 = 0.1;
pub const FLATNESS_STEP: f64 = 0.001;
pub const RANGE_THRESHOLD: f64 = 1e-6;
pub const RANGE_RATIO_BOUND: f64 = 50.0;

/// `theta^2 / 8`: leading infidelity coefficient of an uncompensated rotation.
pub fn naive_coefficient(theta: f64) -> f64 {
    theta * theta / 8.0
}

/// `(theta^6 - 14 pi^2 theta^4 - 32 pi^4 theta^2) / 9216` as printed; this
/// is negative for `0 < theta < 4pi`, so only its magnitude is compared.
pub fn bb1_signed_coefficient(theta: f64) -> f64 {
    let t2 = theta * theta;
    let p2 = PI * PI;
    (t2 * t2 * t2 - 14.0 * p2 * t2 * t2 - 32.0 * p2 * p2 * t2) / 9216.0
}

pub fn bb1_coefficient(theta: f64) -> f64 {
    bb1_signed_coefficient(theta).abs()
}

/// `63 pi^6 / 65536`, the sixth-order coefficient at `theta = pi/2`.
pub fn bb1_half_pi_coefficient() -> f64 {
    63.0 * PI.powi(6) / 65536.0
}

/// Outcome of one fitted expansion compared against its expected form.
#[derive(Debug, Clone)]
pub struct ExpansionCheck {
    pub name: &'static str,
    pub expected_exponent: u32,
    pub expected_coefficient: f64,
    pub tolerance: f64,
    pub fit: Result<SeriesFit>,
}

impl ExpansionCheck {
    pub fn relative_error(&self) -> Option<f64> {
        self.fit
            .as_ref()
            .ok()
            .map(|f| f.coefficient / self.expected_coefficient - 1.0)
    }

    pub fn passed(&self) -> bool {
        match &self.fit {
            Ok(f) => {
                f.exponent == self.expected_exponent
                    && self.relative_error().unwrap().abs() <= self.tolerance
            }
            Err(_) => false,
        }
    }
}

impl fmt::Display for ExpansionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        match &self.fit {
            Ok(fit) => write!(
                f,
                "{verdict} {}: exponent expected={} fitted={} (slope {:.4}); \
                 coefficient expected={:.6} fitted={:.6} rel_err={:+.3}% tol={}%",
                self.name,
                self.expected_exponent,
                fit.exponent,
                fit.slope,
                self.expected_coefficient,
                fit.coefficient,
                100.0 * self.relative_error().unwrap(),
                100.0 * self.tolerance
            ),
            Err(e) => write!(f, "{verdict} {}: fit failed: {e}", self.name),
        }
    }
}

fn expansion(
    name: &'static str,
    scheme: Scheme,
    gate: GateKind,
    theta: f64,
) -> Result<ExpansionCheck> {
    let family = Family::new(scheme, gate, theta)?;
    let (exponent, coefficient, tolerance, window) = match scheme {
        Scheme::Naive => (
            2,
            naive_coefficient(theta),
            NAIVE_COEFFICIENT_TOL,
            ORDER2_WINDOW,
        ),
        Scheme::Bb1 => (
            6,
            bb1_coefficient(theta),
            BB1_COEFFICIENT_TOL,
            ORDER6_WINDOW,
        ),
    };
    let fit = fit_leading_order(family.infidelity_curve(), window, DEFAULT_POINTS);
    Ok(ExpansionCheck {
        name,
        expected_exponent: exponent,
        expected_coefficient: coefficient,
        tolerance,
        fit,
    })
}

/// Fits for naive and BB1, single-spin and Ising, at one rotation angle.
pub fn expansion_checks(theta: f64) -> Result<Vec<ExpansionCheck>> {
    Ok(vec![
        expansion("naive-1q", Scheme::Naive, GateKind::SingleQubit, theta)?,
        expansion("bb1-1q", Scheme::Bb1, GateKind::SingleQubit, theta)?,
        expansion("naive-ising", Scheme::Naive, GateKind::Ising, theta)?,
        expansion("bb1-ising", Scheme::Bb1, GateKind::Ising, theta)?,
    ])
}

/// Largest sampled BB1 Ising infidelity for `|eps| <= 0.1`, step 0.001.
#[derive(Debug, Clone, Copy)]
pub struct FlatnessCheck {
    pub max_infidelity: f64,
    pub at_epsilon: f64,
}

impl FlatnessCheck {
    pub fn passed(&self) -> bool {
        self.max_infidelity < FLATNESS_BOUND
    }
}

impl fmt::Display for FlatnessCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} flatness: bb1-ising max infidelity over |eps| <= {} is {:.4e} at eps={:+.3} (bound {:e})",
            if self.passed() { "PASS" } else { "FAIL" },
            FLATNESS_RANGE,
            self.max_infidelity,
            self.at_epsilon,
            FLATNESS_BOUND
        )
    }
}

pub fn flatness_check() -> Result<FlatnessCheck> {
    let family = Family::new(Scheme::Bb1, GateKind::Ising, FRAC_PI_2)?;
    let grid = linear_grid(-FLATNESS_RANGE, FLATNESS_RANGE, FLATNESS_STEP)?;
    let curve = family.sweep(&grid, ErrorAxis::Coupling)?;
    let worst = curve
        .samples()
        .iter()
        .max_by(|a, b| a.infidelity().total_cmp(&b.infidelity()))
        .expect("non-empty grid");
    Ok(FlatnessCheck {
        max_infidelity: worst.infidelity(),
        at_epsilon: worst.epsilon,
    })
}

/// Robust ranges of the naive and BB1 Ising gates at one threshold.
#[derive(Debug, Clone, Copy)]
pub struct RangeRatioCheck {
    pub threshold: f64,
    pub naive_range: f64,
    pub robust_range: f64,
}

impl RangeRatioCheck {
    pub fn ratio(&self) -> f64 {
        self.robust_range / self.naive_range
    }

    pub fn passed(&self) -> bool {
        self.ratio() > RANGE_RATIO_BOUND
    }
}

impl fmt::Display for RangeRatioCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} range-ratio: threshold={:e} naive={:.6e} bb1={:.6e} ratio={:.2} (bound > {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.threshold,
            self.naive_range,
            self.robust_range,
            self.ratio(),
            RANGE_RATIO_BOUND
        )
    }
}

pub fn range_ratio_check(threshold: f64) -> Result<RangeRatioCheck> {
    let naive = Family::new(Scheme::Naive, GateKind::Ising, FRAC_PI_2)?;
    let robust = Family::new(Scheme::Bb1, GateKind::Ising, FRAC_PI_2)?;
    let n = robust_range(naive.infidelity_curve(), threshold, DEFAULT_SEARCH_MAX)?;
    let r = robust_range(robust.infidelity_curve(), threshold, DEFAULT_SEARCH_MAX)?;
    Ok(RangeRatioCheck {
        threshold,
        naive_range: n.epsilon_max,
        robust_range: r.epsilon_max,
    })
}
