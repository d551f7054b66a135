//! Independent reference computations used only by the test suites.
#![allow(dead_code)]

/// The eight-term symmetric kernel written out indicator by indicator, times 4.
pub fn phi_quarters(x1: f64, x2: f64, y1: f64, y2: f64) -> i64 {
    let i = |c: bool| c as i64;
    i(x1 < y1 && y2 < x2 && x2 < y1) - i(y1 < x1 && x2 < y2 && y2 < x1)
        + i(x2 < y1 && y2 < x1 && x1 < y1)
        - i(y1 < x2 && x1 < y2 && y2 < x2)
        + i(x1 < y2 && y1 < x2 && x2 < y2)
        - i(y2 < x1 && x2 < y1 && y1 < x1)
        + i(x2 < y2 && y1 < x1 && x1 < y2)
        - i(y2 < x2 && x1 < y1 && y1 < x2)
}

/// Four nested loops over `i<j`, `k<l`: total and per-index sums in quarter units.
/// Indices follow the order of the slices as given.
pub fn brute_force(x: &[f64], y: &[f64]) -> (i64, Vec<i64>) {
    let (m, n) = (x.len(), y.len());
    let mut total = 0;
    let mut per = vec![0; m + n];
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..n {
                for l in k + 1..n {
                    let q = phi_quarters(x[i], x[j], y[k], y[l]);
                    total += q;
                    per[i] += q;
                    per[j] += q;
                    per[m + k] += q;
                    per[m + l] += q;
                }
            }
        }
    }
    (total, per)
}

fn c2(k: usize) -> f64 {
    (k * (k - 1) / 2) as f64
}

pub fn brute_u(x: &[f64], y: &[f64]) -> f64 {
    brute_force(x, y).0 as f64 / 4.0 / (c2(x.len()) * c2(y.len()))
}

/// Pseudo-values by recomputing the U-statistic with each observation removed.
pub fn naive_pseudovalues(x: &[f64], y: &[f64]) -> Vec<f64> {
    let big = (x.len() + y.len()) as f64;
    let u = brute_u(x, y);
    let mut out = Vec::new();
    for i in 0..x.len() {
        let mut xr = x.to_vec();
        xr.remove(i);
        out.push(big * u - (big - 1.0) * brute_u(&xr, y));
    }
    for k in 0..y.len() {
        let mut yr = y.to_vec();
        yr.remove(k);
        out.push(big * u - (big - 1.0) * brute_u(x, &yr));
    }
    out
}

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
pub fn ks_distance(mut draws: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    draws.sort_by(f64::total_cmp);
    let n = draws.len() as f64;
    draws
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}
