mod common;

use common::mean_var;
use prhr::distributions::{sample_exponential, sample_frechet, sample_ged, RngStream};
use prhr::{sigma01_null, sigma10_null, u_statistic, umw_test, Alternative, MwEstimate, Sample};

fn ged_pair(seed: u64, r: u64, theta: f64, m: usize, n: usize) -> (Sample, Sample) {
    let mut rng = RngStream::new(seed, r);
    let x = sample_exponential(&mut rng, 1.0, m).unwrap();
    let y = sample_ged(&mut rng, 1.0, theta, n).unwrap();
    (Sample::new("x", x).unwrap(), Sample::new("y", y).unwrap())
}

#[test]
fn null_variance_components_are_positive_and_mirror() {
    for k in 0..50 {
        let theta = 0.1 * 100f64.powf(k as f64 / 49.0);
        let a = sigma10_null(theta).unwrap();
        let b = sigma01_null(theta).unwrap();
        assert!(a > 0.0 && b > 0.0);
        assert!((a - sigma01_null(1.0 / theta).unwrap()).abs() < 1e-12);
        assert!((b - sigma10_null(1.0 / theta).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn scaled_u_variance_matches_the_asymptotic_formula() {
    let (m, n, theta) = (60, 60, 2.0);
    let scaled: Vec<f64> = (0..3000)
        .map(|r| {
            let (x, y) = ged_pair(31, r, theta, m, n);
            ((m + n) as f64).sqrt() * u_statistic(&x, &y).unwrap().u()
        })
        .collect();
    let (mean, var) = mean_var(&scaled);
    let lambda = m as f64 / (m + n) as f64;
    let target = 4.0
        * (sigma10_null(theta).unwrap() / lambda + sigma01_null(theta).unwrap() / (1.0 - lambda));
    assert!(mean.abs() < 0.05, "mean {mean}");
    assert!((var / target - 1.0).abs() < 0.12, "var {var} vs {target}");
}

#[test]
fn plug_in_theta_is_biased_upward() {
    let est: Vec<f64> = (0..10_000)
        .filter_map(|r| {
            let (x, y) = ged_pair(32, r, 2.0, 20, 20);
            MwEstimate::new(&x, &y).theta
        })
        .collect();
    assert!(est.len() > 9_900);
    let (mean, _) = mean_var(&est);
    assert!(mean >= 2.0, "mean {mean}");
}

#[test]
fn u_is_consistent_under_an_alternative() {
    let stats = |size: usize| {
        let us: Vec<f64> = (0..300)
            .map(|r| {
                let mut rng = RngStream::new(33, r);
                let x = sample_frechet(&mut rng, 3.0, size).unwrap();
                let y = sample_frechet(&mut rng, 1.0, size).unwrap();
                let (x, y) = (Sample::new("x", x).unwrap(), Sample::new("y", y).unwrap());
                u_statistic(&x, &y).unwrap().u()
            })
            .collect();
        mean_var(&us)
    };
    let (mean_small, var_small) = stats(20);
    let (mean_large, var_large) = stats(200);
    assert!(mean_small > 0.0 && mean_large > 0.0);
    assert!(var_large < var_small / 4.0, "{var_small} -> {var_large}");
}

#[test]
fn normal_test_has_nominal_size_in_large_samples() {
    let reps = 400;
    let rejections = (0..reps)
        .filter(|&r| {
            let (x, y) = ged_pair(34, r, 1.0, 400, 400);
            umw_test(&x, &y, Alternative::Increasing, None)
                .unwrap()
                .p_value
                <= 0.05
        })
        .count();
    let rate = rejections as f64 / reps as f64;
    assert!((0.02..=0.09).contains(&rate), "rate {rate}");
}
