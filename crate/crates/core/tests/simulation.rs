use prhr::sim::{run, SimConfig};
use prhr::{run_power, run_type1, Method, Scenario};

fn run_with_threads(config: &SimConfig, threads: usize) -> prhr::SimTable {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(|| run(config).unwrap())
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let config = SimConfig::new(Scenario::frechet(3.0), 12, 15, 300, 77);
    let one = run_with_threads(&config, 1);
    let four = run_with_threads(&config, 4);
    assert_eq!(one, four);
    let mut a = Vec::new();
    let mut b = Vec::new();
    one.write_tsv(&mut a).unwrap();
    four.write_tsv(&mut b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn power_grows_with_the_separation() {
    let weak = run_power(&SimConfig::new(Scenario::frechet(3.0), 10, 10, 5000, 42)).unwrap();
    let strong = run_power(&SimConfig::new(Scenario::frechet(5.0), 10, 10, 5000, 42)).unwrap();
    for method in Method::ALL {
        let (w, s) = (
            weak.rate(method, 0.05).unwrap(),
            strong.rate(method, 0.05).unwrap(),
        );
        assert!(s > w, "{method}: {w} vs {s}");
    }
}

#[test]
fn run_kinds_check_their_scenario() {
    assert!(run_type1(&SimConfig::new(Scenario::frechet(3.0), 10, 10, 10, 1)).is_err());
    assert!(run_power(&SimConfig::new(Scenario::null_ged(2.0), 10, 10, 10, 1)).is_err());
}

#[test]
fn different_seeds_give_different_tables() {
    let a = run(&SimConfig::new(Scenario::gumbel(3.0), 10, 10, 200, 1)).unwrap();
    let b = run(&SimConfig::new(Scenario::gumbel(3.0), 10, 10, 200, 2)).unwrap();
    assert_ne!(a, b);
}
