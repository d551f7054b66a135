//! Monte Carlo size and power studies.
//!
//! Replication `r` draws all of its data from [`RngStream`] `(seed, r)`,
//! baseline sample first, so a table depends only on its configuration and
//! never on how replications are scheduled across threads.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotic::{plug_in_theta, tau_hat, umw_statistic};
use crate::distributions::{
    sample_exponential, sample_frechet, sample_ged, sample_gumbel, RngStream,
};
use crate::el::{ajel_from_pseudovalues, jel_from_pseudovalues, ElReport, ElRule};
use crate::error::{Error, Result};
use crate::kernel::{jackknife_pseudovalues, u_statistic};
use crate::samples::Sample;
use crate::{Alternative, Method};

pub const DEFAULT_REPS: usize = 10_000;
pub const DEFAULT_ALPHAS: [f64; 3] = [0.01, 0.05, 0.10];

/// Data-generating pair. `baseline` is the fixed parameter of the reference
/// family: the exponential rate for `NullGed` and `Gumbel`, the Fréchet
/// shape of the comparison group for `Frechet`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum Scenario {
    /// X ~ Exp(λ), Y ~ GED(λ, θ): the null holds with resilience θ.
    NullGed { theta: f64, baseline: f64 },
    /// X ~ Fréchet(α₂), Y ~ Fréchet(α₁); the ratio increases iff α₂ > α₁.
    Frechet { alpha2: f64, baseline: f64 },
    /// X ~ Exp(λ), Y ~ Gumbel with scale γ; the ratio increases iff γ > 1.
    Gumbel { gamma: f64, baseline: f64 },
}

impl Scenario {
    pub fn null_ged(theta: f64) -> Self {
        Scenario::NullGed {
            theta,
            baseline: 1.0,
        }
    }

    pub fn frechet(alpha2: f64) -> Self {
        Scenario::Frechet {
            alpha2,
            baseline: 1.0,
        }
    }

    pub fn gumbel(gamma: f64) -> Self {
        Scenario::Gumbel {
            gamma,
            baseline: 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::NullGed { .. } => "null-ged",
            Scenario::Frechet { .. } => "frechet",
            Scenario::Gumbel { .. } => "gumbel",
        }
    }

    /// The varied parameter: θ, α₂ or γ.
    pub fn param(&self) -> f64 {
        match *self {
            Scenario::NullGed { theta, .. } => theta,
            Scenario::Frechet { alpha2, .. } => alpha2,
            Scenario::Gumbel { gamma, .. } => gamma,
        }
    }

    fn baseline(&self) -> f64 {
        match *self {
            Scenario::NullGed { baseline, .. }
            | Scenario::Frechet { baseline, .. }
            | Scenario::Gumbel { baseline, .. } => baseline,
        }
    }

    /// Draws `(x, y)` of sizes `(m, n)` from one stream, `x` first.
    pub fn draw(&self, rng: &mut RngStream, m: usize, n: usize) -> Result<(Sample, Sample)> {
        let (x, y) = match *self {
            Scenario::NullGed { theta, baseline } => (
                sample_exponential(rng, baseline, m)?,
                sample_ged(rng, baseline, theta, n)?,
            ),
            Scenario::Frechet { alpha2, baseline } => (
                sample_frechet(rng, alpha2, m)?,
                sample_frechet(rng, baseline, n)?,
            ),
            Scenario::Gumbel { gamma, baseline } => (
                sample_exponential(rng, baseline, m)?,
                sample_gumbel(rng, gamma, n)?,
            ),
        };
        Ok((Sample::new("x", x)?, Sample::new("y", y)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub scenario: Scenario,
    pub m: usize,
    pub n: usize,
    pub reps: usize,
    pub alphas: Vec<f64>,
    pub seed: u64,
    /// Decision rule for JEL and AJEL; `ChiSquare` by default.
    pub el_rule: ElRule,
}

impl SimConfig {
    pub fn new(scenario: Scenario, m: usize, n: usize, reps: usize, seed: u64) -> Self {
        Self {
            scenario,
            m,
            n,
            reps,
            alphas: DEFAULT_ALPHAS.to_vec(),
            seed,
            el_rule: ElRule::ChiSquare,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if self.m < 3 || self.n < 3 {
            return Err(Error::Config(format!(
                "group sizes must be at least 3, got m={} n={}",
                self.m, self.n
            )));
        }
        if self.alphas.is_empty() {
            return Err(Error::Config(
                "at least one significance level is required".into(),
            ));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return Err(Error::Config(format!(
                "significance level {a} is not in (0, 1)"
            )));
        }
        for (name, v) in [
            ("parameter", self.scenario.param()),
            ("baseline", self.scenario.baseline()),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "scenario {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of all three tests on one replication; `None` marks a method
/// that was undefined on that data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    pub u: f64,
    pub umw_p: Option<f64>,
    pub jel: Option<ElReport>,
    pub ajel: Option<ElReport>,
}

impl Replication {
    pub fn rejects(&self, method: Method, alpha: f64, rule: ElRule) -> Option<bool> {
        match method {
            Method::Umw => self.umw_p.map(|p| p <= alpha),
            Method::Jel => self.jel.map(|r| r.rejects_with(alpha, rule)),
            Method::Ajel => self.ajel.map(|r| r.rejects_with(alpha, rule)),
        }
    }
}

/// Runs replication `r` of `config` against the increasing alternative.
pub fn replicate(config: &SimConfig, r: u64) -> Result<Replication> {
    let mut rng = RngStream::new(config.seed, r);
    let (x, y) = config.scenario.draw(&mut rng, config.m, config.n)?;
    let alt = Alternative::Increasing;
    let summary = u_statistic(&x, &y)?;
    let u = summary.u();
    let umw_p = plug_in_theta(tau_hat(&x, &y))
        .and_then(|theta| umw_statistic(u, config.m, config.n, theta, alt))
        .map(|r| r.p_value)
        .ok();
    let pv = jackknife_pseudovalues(&summary, 0.0)?;
    Ok(Replication {
        u,
        umw_p,
        jel: jel_from_pseudovalues(&pv, u, alt).ok(),
        ajel: ajel_from_pseudovalues(&pv, u, alt).ok(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRow {
    pub scenario: &'static str,
    pub param: f64,
    pub m: usize,
    pub n: usize,
    pub method: Method,
    pub alpha: f64,
    /// Share of defined replications that rejected; 0 when none were defined.
    pub rejection_rate: f64,
    pub undefined_rate: f64,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SimTable {
    pub rows: Vec<SimRow>,
}

impl SimTable {
    pub fn rate(&self, method: Method, alpha: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.alpha == alpha)
            .map(|r| r.rejection_rate)
    }

    pub fn extend(&mut self, other: SimTable) {
        self.rows.extend(other.rows);
    }

    /// Tab-separated, one header line, floats in shortest round-trip form.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(e.to_string());
        writeln!(
            out,
            "scenario\tparam\tm\tn\tmethod\talpha\trejection_rate\tundefined_rate\treps\tseed"
        )
        .map_err(io)?;
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.scenario,
                r.param,
                r.m,
                r.n,
                r.method,
                r.alpha,
                r.rejection_rate,
                r.undefined_rate,
                r.reps,
                r.seed
            )
            .map_err(io)?;
        }
        Ok(())
    }
}

/// Runs every replication (in parallel) and tabulates rejection rates.
pub fn run(config: &SimConfig) -> Result<SimTable> {
    config.validate()?;
    let reps: Vec<Replication> = (0..config.reps as u64)
        .into_par_iter()
        .map(|r| replicate(config, r))
        .collect::<Result<_>>()?;
    Ok(tabulate(config, &reps))
}

fn tabulate(config: &SimConfig, reps: &[Replication]) -> SimTable {
    let total = reps.len();
    let mut rows = Vec::new();
    for method in Method::ALL {
        for &alpha in &config.alphas {
            let (defined, rejected) = reps
                .iter()
                .filter_map(|r| r.rejects(method, alpha, config.el_rule))
                .fold((0usize, 0usize), |(d, k), rej| (d + 1, k + rej as usize));
            rows.push(SimRow {
                scenario: config.scenario.name(),
                param: config.scenario.param(),
                m: config.m,
                n: config.n,
                method,
                alpha,
                rejection_rate: if defined == 0 {
                    0.0
                } else {
                    rejected as f64 / defined as f64
                },
                undefined_rate: (total - defined) as f64 / total as f64,
                reps: config.reps,
                seed: config.seed,
            });
        }
    }
    SimTable { rows }
}

/// Empirical type I error under a GED null.
pub fn run_type1(config: &SimConfig) -> Result<SimTable> {
    match config.scenario {
        Scenario::NullGed { .. } => run(config),
        other => Err(Error::Config(format!(
            "type I error runs need the null-ged scenario, got {}",
            other.name()
        ))),
    }
}

/// Empirical power under the Fréchet or Gumbel alternatives.
pub fn run_power(config: &SimConfig) -> Result<SimTable> {
    match config.scenario {
        Scenario::Frechet { .. } | Scenario::Gumbel { .. } => run(config),
        other => Err(Error::Config(format!(
            "power runs need the frechet or gumbel scenario, got {}",
            other.name()
        ))),
    }
}
