//! Normal-approximation test built on the Mann–Whitney plug-in estimate of
//! the resilience parameter.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::u_statistic;
use crate::samples::Sample;
use crate::special::{normal_cdf, normal_sf};
use crate::Alternative;

/// `P(X < Y)` estimated by the proportion of strictly concordant pairs.
pub fn tau_hat(x: &Sample, y: &Sample) -> f64 {
    let below: usize = y.values().iter().map(|&t| x.count_below(t)).sum();
    below as f64 / (x.len() * y.len()) as f64
}

/// `tau / (1 - tau)`; undefined at `tau = 1`.
pub fn theta_hat(tau: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain {
            name: "tau",
            value: tau,
            reason: "must lie in [0, 1]",
        });
    }
    if tau == 1.0 {
        return Err(Error::Degenerate(
            "every baseline observation lies below every comparison observation (tau = 1)".into(),
        ));
    }
    Ok(tau / (1.0 - tau))
}

/// Mann–Whitney estimates of `tau = P(X<Y)` and `theta = tau/(1-tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MwEstimate {
    pub tau: f64,
    /// `None` when `tau = 1`.
    pub theta: Option<f64>,
}

impl MwEstimate {
    pub fn new(x: &Sample, y: &Sample) -> Self {
        let tau = tau_hat(x, y);
        Self {
            tau,
            theta: theta_hat(tau).ok(),
        }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "theta",
            value: theta,
            reason: "must be positive and finite",
        })
    }
}

/// Null variance of the baseline-side projection of the kernel under
/// `F = F0^theta`.
pub fn sigma10_null(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let t = theta;
    let a = 2.0 * t + 1.0;
    let bracket = 1.0 - 1.0 / (a * (t + 1.0).powi(2)) - 8.0 * t / (3.0 * t + 2.0)
        + 16.0 * t * t / ((4.0 * t + 3.0) * a);
    Ok(bracket / (4.0 * a))
}

/// Null variance of the comparison-side projection of the kernel under
/// `F = F0^theta`.
pub fn sigma01_null(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let t = theta;
    let b = 2.0 + t;
    let bracket = 1.0 - 8.0 / (3.0 + 2.0 * t) + 16.0 / ((4.0 + 3.0 * t) * b)
        - t.powi(3) / (b * (t + 1.0).powi(2));
    Ok(t / (4.0 * b) * bracket)
}

/// Normalized U-statistic and its one-sided normal p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UmwReport {
    pub statistic: f64,
    pub p_value: f64,
    pub sigma10_sq: f64,
    pub sigma01_sq: f64,
    pub theta_used: f64,
}

/// Normalizes `u` with the null variances evaluated at `theta`.
pub fn umw_statistic(
    u: f64,
    m: usize,
    n: usize,
    theta: f64,
    alternative: Alternative,
) -> Result<UmwReport> {
    let sigma10_sq = sigma10_null(theta)?;
    let sigma01_sq = sigma01_null(theta)?;
    let se = 2.0 * (sigma10_sq / m as f64 + sigma01_sq / n as f64).sqrt();
    let statistic = u / se;
    let p_value = match alternative {
        Alternative::Increasing => normal_sf(statistic),
        Alternative::Decreasing => normal_cdf(statistic),
    };
    Ok(UmwReport {
        statistic,
        p_value,
        sigma10_sq,
        sigma01_sq,
        theta_used: theta,
    })
}

/// Plug-in theta for the normal test; `tau` at either end of `[0, 1]` leaves
/// the variance undefined.
pub fn plug_in_theta(tau: f64) -> Result<f64> {
    if tau == 0.0 {
        return Err(Error::Degenerate(
            "every baseline observation lies at or above every comparison observation (tau = 0)"
                .into(),
        ));
    }
    theta_hat(tau)
}

/// The `U_MW` test with `theta` estimated from the data, or fixed when
/// `theta_override` is given.
pub fn umw_test(
    x: &Sample,
    y: &Sample,
    alternative: Alternative,
    theta_override: Option<f64>,
) -> Result<UmwReport> {
    let summary = u_statistic(x, y)?;
    let theta = match theta_override {
        Some(t) => t,
        None => plug_in_theta(tau_hat(x, y))?,
    };
    umw_statistic(summary.u(), x.len(), y.len(), theta, alternative)
}
