//! Jackknife empirical likelihood (JEL) and its adjusted variant (AJEL).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{jackknife_pseudovalues, u_statistic, PseudoValues};
use crate::samples::Sample;
use crate::special::chi2_1_sf;
use crate::{Alternative, Method};

const MAX_ITERATIONS: usize = 200;

/// Maximizer of the empirical likelihood under a zero-mean constraint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElSolution {
    pub lambda: f64,
    pub weights: Vec<f64>,
    /// `-2 log R = 2 Σ log(1 + λ w_i)`.
    pub neg2_log_r: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Solves `Σ w_i / (1 + λ w_i) = 0` for the Lagrange multiplier.
///
/// The left-hand side is strictly decreasing on `(-1/max w, -1/min w)` and
/// runs from `+∞` to `-∞`, so Newton steps are kept inside a shrinking
/// bracket and replaced by bisection whenever they would leave it.
pub fn solve_lambda(w: &[f64]) -> Result<ElSolution> {
    if w.is_empty() {
        return Err(Error::InsufficientData {
            group: "pseudo-values".into(),
            needed: 1,
            got: 0,
        });
    }
    let big = w.len() as f64;
    if w.iter().all(|&v| v == 0.0) {
        return Ok(ElSolution {
            lambda: 0.0,
            weights: vec![1.0 / big; w.len()],
            neg2_log_r: 0.0,
            converged: true,
            iterations: 0,
        });
    }
    let (min, max) = w
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if !(min < 0.0 && 0.0 < max) {
        return Err(Error::HullViolation);
    }
    let scale = min.abs().max(max);
    let stop = 1e-12 * big * scale;
    let accept = 1e-10 * big * scale;

    // Open bracket: g(lo) = +inf, g(hi) = -inf.
    let (mut lo, mut hi) = (-1.0 / max, -1.0 / min);
    let mut lambda = 0.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let (g, dg) = score(w, lambda);
        if g.abs() <= stop {
            converged = true;
            break;
        }
        if g > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
        let newton = lambda - g / dg;
        let next = if newton > lo && newton < hi {
            newton
        } else {
            lo + 0.5 * (hi - lo)
        };
        if next == lambda || !(next > lo && next < hi) {
            // Bracket exhausted at floating-point resolution.
            converged = g.abs() <= accept;
            break;
        }
        lambda = next;
    }
    if !converged {
        return Err(Error::NonConvergence { iterations });
    }

    let weights = w
        .iter()
        .map(|&v| 1.0 / (big * (1.0 + lambda * v)))
        .collect();
    let neg2_log_r = 2.0 * w.iter().map(|&v| (lambda * v).ln_1p()).sum::<f64>();
    Ok(ElSolution {
        lambda,
        weights,
        neg2_log_r: neg2_log_r.max(0.0),
        converged,
        iterations,
    })
}

/// `Σ w/(1+λw)` and its derivative in `λ`.
fn score(w: &[f64], lambda: f64) -> (f64, f64) {
    w.iter().fold((0.0, 0.0), |(g, dg), &v| {
        let r = v / (1.0 + lambda * v);
        (g + r, dg - r * r)
    })
}

/// A likelihood-ratio statistic with its `χ²₁` calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElReport {
    pub method: Method,
    pub statistic: f64,
    pub p_value: f64,
    /// Sign of the U-statistic: the direction of the observed departure.
    pub direction_sign: i8,
    pub alternative: Alternative,
    pub lambda: f64,
}

/// How a likelihood-ratio statistic is turned into a one-sided decision.
///
/// `-2 log R(0)` is nonnegative and blind to the direction of the departure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElRule {
    /// Reject when `p <= alpha` and the sign of `U` matches the alternative.
    #[default]
    SignGated,
    /// Reject when `-2 log R(0)` exceeds the `χ²₁` upper-`alpha` quantile,
    /// whatever the sign of `U`.
    ChiSquare,
}

impl ElReport {
    /// Sign-gated decision: the `χ²₁` p-value is at most `alpha` and the
    /// observed departure points in the direction of the alternative.
    pub fn rejects(&self, alpha: f64) -> bool {
        self.rejects_with(alpha, ElRule::SignGated)
    }

    pub fn rejects_with(&self, alpha: f64, rule: ElRule) -> bool {
        let gate = match rule {
            ElRule::SignGated => self.direction_sign == self.alternative.sign(),
            ElRule::ChiSquare => true,
        };
        self.p_value <= alpha && gate
    }
}

fn sign(u: f64) -> i8 {
    if u > 0.0 {
        1
    } else if u < 0.0 {
        -1
    } else {
        0
    }
}

/// Adjustment level `max(1, log(N)/2)` for `N` pooled points.
pub fn ajel_level(pooled: usize) -> f64 {
    ((pooled as f64).ln() / 2.0).max(1.0)
}

/// Appends the adjustment point `-(a/N)·Σ w_i` to centered pseudo-values.
pub fn adjusted_points(w: &[f64]) -> Vec<f64> {
    let big = w.len();
    let a = ajel_level(big);
    let extra = -(a / big as f64) * w.iter().sum::<f64>();
    let mut out = Vec::with_capacity(big + 1);
    out.extend_from_slice(w);
    out.push(extra);
    out
}

fn report(method: Method, sol: &ElSolution, u: f64, alternative: Alternative) -> ElReport {
    ElReport {
        method,
        statistic: sol.neg2_log_r,
        p_value: chi2_1_sf(sol.neg2_log_r),
        direction_sign: sign(u),
        alternative,
        lambda: sol.lambda,
    }
}

/// JEL statistic from precomputed pseudo-values; `u` orients the decision.
pub fn jel_from_pseudovalues(
    pv: &PseudoValues,
    u: f64,
    alternative: Alternative,
) -> Result<ElReport> {
    let sol = solve_lambda(&pv.centered())?;
    Ok(report(Method::Jel, &sol, u, alternative))
}

/// AJEL statistic from precomputed pseudo-values; `u` orients the decision.
pub fn ajel_from_pseudovalues(
    pv: &PseudoValues,
    u: f64,
    alternative: Alternative,
) -> Result<ElReport> {
    let sol = solve_lambda(&adjusted_points(&pv.centered()))?;
    Ok(report(Method::Ajel, &sol, u, alternative))
}

/// `-2 log R(0)` over the jackknife pseudo-values of the U-statistic.
pub fn jel_test(x: &Sample, y: &Sample, alternative: Alternative) -> Result<ElReport> {
    let summary = u_statistic(x, y)?;
    let pv = jackknife_pseudovalues(&summary, 0.0)?;
    jel_from_pseudovalues(&pv, summary.u(), alternative)
}

/// `-2 log R*(0)` with one extra pseudo-value that keeps zero inside the hull.
pub fn ajel_test(x: &Sample, y: &Sample, alternative: Alternative) -> Result<ElReport> {
    let summary = u_statistic(x, y)?;
    let pv = jackknife_pseudovalues(&summary, 0.0)?;
    ajel_from_pseudovalues(&pv, summary.u(), alternative)
}
