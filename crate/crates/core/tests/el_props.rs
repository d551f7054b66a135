mod common;

use prhr::distributions::{sample_exponential, RngStream};
use prhr::el::{adjusted_points, ajel_level, solve_lambda};
use prhr::{ajel_test, jel_test, Alternative, Error, Sample};
use proptest::prelude::*;

fn mixed_signs() -> impl Strategy<Value = Vec<f64>> {
    (
        prop::collection::vec(-50.0f64..-1e-3, 1..40),
        prop::collection::vec(1e-3f64..50.0, 1..40),
    )
        .prop_map(|(mut a, b)| {
            a.extend(b);
            a
        })
}

proptest! {
    #[test]
    fn solution_satisfies_the_estimating_equation(w in mixed_signs()) {
        let s = solve_lambda(&w).unwrap();
        prop_assert!(s.converged);
        let big = w.len() as f64;
        let scale = w.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let residual: f64 = w.iter().map(|v| v / (1.0 + s.lambda * v)).sum();
        prop_assert!(residual.abs() <= 1e-10 * big * scale, "residual {}", residual);
        prop_assert!(s.weights.iter().all(|&p| p > 0.0));
        let total: f64 = s.weights.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-8);
        let weighted_mean: f64 = s.weights.iter().zip(&w).map(|(p, v)| p * v).sum();
        prop_assert!(weighted_mean.abs() <= 1e-9 * scale);
        let from_weights = -2.0 * s.weights.iter().map(|p| (big * p).ln()).sum::<f64>();
        prop_assert!((from_weights - s.neg2_log_r).abs() <= 1e-7 * (1.0 + s.neg2_log_r));
        prop_assert!(s.neg2_log_r >= 0.0);
    }

    #[test]
    fn one_signed_points_violate_the_hull(w in prop::collection::vec(0.0f64..5.0, 1..20)) {
        prop_assume!(w.iter().any(|&v| v != 0.0));
        prop_assert_eq!(solve_lambda(&w).unwrap_err(), Error::HullViolation);
        let neg: Vec<f64> = w.iter().map(|v| -v).collect();
        prop_assert_eq!(solve_lambda(&neg).unwrap_err(), Error::HullViolation);
    }

    #[test]
    fn adjusted_points_always_straddle_zero(w in prop::collection::vec(-5.0f64..5.0, 3..30)) {
        let mean = w.iter().sum::<f64>() / w.len() as f64;
        prop_assume!(mean.abs() > 1e-9);
        let adj = adjusted_points(&w);
        prop_assert_eq!(adj.len(), w.len() + 1);
        prop_assert!(solve_lambda(&adj).is_ok());
    }
}

#[test]
fn adjustment_level_follows_pooled_size() {
    assert_eq!(ajel_level(2), 1.0);
    assert_eq!(ajel_level(7), 1.0);
    assert!((ajel_level(20) - 20f64.ln() / 2.0).abs() < 1e-15);
}

#[test]
fn ajel_tracks_jel_for_large_null_samples() {
    let mut worst = 0.0f64;
    for r in 0..20 {
        let mut rng = RngStream::new(2024, r);
        let x = Sample::new("x", sample_exponential(&mut rng, 1.0, 100).unwrap()).unwrap();
        let y = Sample::new("y", sample_exponential(&mut rng, 1.0, 120).unwrap()).unwrap();
        let (Ok(j), Ok(a)) = (
            jel_test(&x, &y, Alternative::Increasing),
            ajel_test(&x, &y, Alternative::Increasing),
        ) else {
            continue;
        };
        if j.statistic > 1e-8 {
            worst = worst.max((j.statistic - a.statistic).abs() / j.statistic);
        }
    }
    assert!(worst <= 0.05, "relative gap {worst}");
}

#[test]
fn ajel_is_defined_wherever_jel_is() {
    for r in 0..200 {
        let mut rng = RngStream::new(5, r);
        let x = Sample::new("x", sample_exponential(&mut rng, 1.0, 5).unwrap()).unwrap();
        let y = Sample::new("y", sample_exponential(&mut rng, 1.0, 5).unwrap()).unwrap();
        if jel_test(&x, &y, Alternative::Increasing).is_ok() {
            assert!(ajel_test(&x, &y, Alternative::Increasing).is_ok());
        }
    }
}
