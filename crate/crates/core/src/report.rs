//! All three tests on one data pair, with per-method decisions.

use serde::Serialize;

use crate::asymptotic::{plug_in_theta, umw_statistic, MwEstimate};
use crate::el::{ajel_from_pseudovalues, jel_from_pseudovalues, ElReport, ElRule};
use crate::error::{Error, Result};
use crate::kernel::{jackknife_pseudovalues, u_statistic};
use crate::samples::Sample;
use crate::{Alternative, Method};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestOptions {
    pub alternative: Alternative,
    pub alpha: f64,
    /// Fixed resilience parameter for the normal test; estimated when `None`.
    pub theta: Option<f64>,
    pub el_rule: ElRule,
}

impl Default for TestOptions {
    fn default() -> Self {
        Self {
            alternative: Alternative::Increasing,
            alpha: 0.05,
            theta: None,
            el_rule: ElRule::SignGated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Reject,
    FailToReject,
    /// The method could not be evaluated on this data.
    Undefined,
}

/// One method's result. Every field is always serialized; a degenerate
/// method has `null` statistic and p-value and a `reason`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub decision: Decision,
    pub degenerate: bool,
    pub reason: Option<String>,
}

impl MethodOutcome {
    fn evaluated(method: Method, statistic: f64, p_value: f64, reject: bool) -> Self {
        Self {
            method,
            statistic: Some(statistic),
            p_value: Some(p_value),
            decision: if reject {
                Decision::Reject
            } else {
                Decision::FailToReject
            },
            degenerate: false,
            reason: None,
        }
    }

    fn degenerate(method: Method, reason: String) -> Self {
        Self {
            method,
            statistic: None,
            p_value: None,
            decision: Decision::Undefined,
            degenerate: true,
            reason: Some(reason),
        }
    }

    fn from_el(method: Method, res: Result<ElReport>, opts: &TestOptions) -> Result<Self> {
        match res {
            Ok(r) => Ok(Self::evaluated(
                method,
                r.statistic,
                r.p_value,
                r.rejects_with(opts.alpha, opts.el_rule),
            )),
            Err(e) if e.is_numerical() => Err(e),
            Err(Error::HullViolation) => Ok(Self::degenerate(
                method,
                "JEL undefined: pseudo-values all share one sign; use AJEL".into(),
            )),
            Err(e) => Ok(Self::degenerate(method, e.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub baseline_label: String,
    pub comparison_label: String,
    pub m: usize,
    pub n: usize,
    pub tau_hat: f64,
    pub theta_hat: Option<f64>,
    pub u_value: f64,
    pub alternative: Alternative,
    pub alpha: f64,
    pub el_rule: ElRule,
    pub methods: Vec<MethodOutcome>,
}

impl TestReport {
    pub fn method(&self, method: Method) -> &MethodOutcome {
        self.methods
            .iter()
            .find(|o| o.method == method)
            .expect("report holds every method")
    }
}

/// Runs the normal, JEL and AJEL tests of `H0: F = F0^θ`, with `x` drawn
/// from the baseline `F0` and `y` from `F`.
///
/// Methods that cannot be evaluated on the data are reported as degenerate;
/// only invalid options and solver failures are errors.
pub fn run_test(x: &Sample, y: &Sample, opts: &TestOptions) -> Result<TestReport> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::Domain {
            name: "alpha",
            value: opts.alpha,
            reason: "must lie in (0, 1)",
        });
    }
    let summary = u_statistic(x, y)?;
    let u = summary.u();
    let mw = MwEstimate::new(x, y);

    let theta = match opts.theta {
        Some(t) => Ok(t),
        None => plug_in_theta(mw.tau),
    };
    let umw = match theta.and_then(|t| umw_statistic(u, x.len(), y.len(), t, opts.alternative)) {
        Ok(r) => {
            MethodOutcome::evaluated(Method::Umw, r.statistic, r.p_value, r.p_value <= opts.alpha)
        }
        Err(Error::Domain {
            name,
            value,
            reason,
        }) if opts.theta.is_some() => {
            return Err(Error::Domain {
                name,
                value,
                reason,
            })
        }
        Err(e) => MethodOutcome::degenerate(Method::Umw, e.to_string()),
    };

    let (jel, ajel) = match jackknife_pseudovalues(&summary, 0.0) {
        Ok(pv) => (
            MethodOutcome::from_el(
                Method::Jel,
                jel_from_pseudovalues(&pv, u, opts.alternative),
                opts,
            )?,
            MethodOutcome::from_el(
                Method::Ajel,
                ajel_from_pseudovalues(&pv, u, opts.alternative),
                opts,
            )?,
        ),
        Err(e) => (
            MethodOutcome::degenerate(Method::Jel, e.to_string()),
            MethodOutcome::degenerate(Method::Ajel, e.to_string()),
        ),
    };

    Ok(TestReport {
        baseline_label: x.label().to_string(),
        comparison_label: y.label().to_string(),
        m: x.len(),
        n: y.len(),
        tau_hat: mw.tau,
        theta_hat: mw.theta,
        u_value: u,
        alternative: opts.alternative,
        alpha: opts.alpha,
        el_rule: opts.el_rule,
        methods: vec![umw, jel, ajel],
    })
}
