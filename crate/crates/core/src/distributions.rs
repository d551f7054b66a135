//! Seeded inverse-transform samplers for the simulation scenarios.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A reproducible uniform stream: ChaCha8 keyed by `seed`, on stream `stream_id`.
///
/// Streams with distinct ids under the same seed are disjoint keystreams, so
/// replication `r` can draw from stream `r` on any worker in any order.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval `(0, 1)`: midpoints of a 2⁻⁵² grid, all
    /// of which are exactly representable.
    pub fn uniform_open(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
        ((self.rng.next_u64() >> 12) as f64 + 0.5) * SCALE
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

fn draws(rng: &mut RngStream, k: usize, quantile: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Config("number of draws must be at least 1".into()));
    }
    Ok((0..k).map(|_| quantile(rng.uniform_open())).collect())
}

/// Inverse of `F(t) = (1 - e^{-λt})^θ`.
pub fn ged_quantile(u: f64, lambda: f64, theta: f64) -> f64 {
    let log_v = u.ln() / theta;
    let v = log_v.exp();
    if v < 0.5 {
        -(-v).ln_1p() / lambda
    } else {
        // 1 - v without cancellation as v approaches 1.
        -(-log_v.exp_m1()).ln() / lambda
    }
}

/// Inverse of `F(x) = exp(-x^{-α})`.
pub fn frechet_quantile(u: f64, alpha: f64) -> f64 {
    (-u.ln()).powf(-1.0 / alpha)
}

/// Inverse of `F(x) = exp(-e^{-x/γ})`, the Gumbel law with scale `γ`.
pub fn gumbel_quantile(u: f64, gamma: f64) -> f64 {
    -(-u.ln()).ln() * gamma
}

/// Generalized exponential draws, GED(λ, θ).
pub fn sample_ged(rng: &mut RngStream, lambda: f64, theta: f64, k: usize) -> Result<Vec<f64>> {
    positive("lambda", lambda)?;
    positive("theta", theta)?;
    draws(rng, k, |u| ged_quantile(u, lambda, theta))
}

/// Exponential draws with rate `λ`; exactly GED(λ, 1).
pub fn sample_exponential(rng: &mut RngStream, lambda: f64, k: usize) -> Result<Vec<f64>> {
    sample_ged(rng, lambda, 1.0, k)
}

pub fn sample_frechet(rng: &mut RngStream, alpha: f64, k: usize) -> Result<Vec<f64>> {
    positive("alpha", alpha)?;
    draws(rng, k, |u| frechet_quantile(u, alpha))
}

/// Gumbel draws with location 0 and scale `γ`; support is the whole line.
pub fn sample_gumbel(rng: &mut RngStream, gamma: f64, k: usize) -> Result<Vec<f64>> {
    positive("gamma", gamma)?;
    draws(rng, k, |u| gumbel_quantile(u, gamma))
}
