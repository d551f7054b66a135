//! Shared fixtures for the benchmarks.

use prhr::distributions::{sample_exponential, sample_ged, RngStream};
use prhr::Sample;

/// An exponential baseline of size `m` and a GED(1, 2) comparison of size `n`.
pub fn null_pair(m: usize, n: usize, seed: u64) -> (Sample, Sample) {
    let mut rng = RngStream::new(seed, 0);
    let x = sample_exponential(&mut rng, 1.0, m).expect("valid parameters");
    let y = sample_ged(&mut rng, 1.0, 2.0, n).expect("valid parameters");
    (
        Sample::new("x", x).expect("finite draws"),
        Sample::new("y", y).expect("finite draws"),
    )
}
