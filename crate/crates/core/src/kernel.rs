//! The departure kernel, the two-sample U-statistic and its jackknife.
//!
//! Kernel values are multiples of 1/4, so all sums are kept as integer counts
//! of quarter units and only converted to floating point at the very end.
//! Observations are indexed in pooled order: `0..m` are the (sorted) baseline
//! observations, `m..m+n` the (sorted) comparison observations.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::samples::Sample;

/// `I(x1<y1, y2<x2<y1) - I(y1<x1, x2<y2<x1)` with strict inequalities.
pub fn kernel_raw(x1: f64, x2: f64, y1: f64, y2: f64) -> i8 {
    let up = x1 < y1 && y2 < x2 && x2 < y1;
    let down = y1 < x1 && x2 < y2 && y2 < x1;
    up as i8 - down as i8
}

/// Four times the symmetric kernel: the sum of [`kernel_raw`] over both
/// orderings of the x-pair and both orderings of the y-pair.
pub fn kernel_sym_quarters(x1: f64, x2: f64, y1: f64, y2: f64) -> i8 {
    kernel_raw(x1, x2, y1, y2)
        + kernel_raw(x2, x1, y1, y2)
        + kernel_raw(x1, x2, y2, y1)
        + kernel_raw(x2, x1, y2, y1)
}

/// Symmetric kernel, a multiple of 1/4 in `[-1, 1]`.
pub fn kernel_sym(x1: f64, x2: f64, y1: f64, y2: f64) -> f64 {
    f64::from(kernel_sym_quarters(x1, x2, y1, y2)) / 4.0
}

fn choose2(k: usize) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

/// Kernel sum over all pairs-of-pairs plus, for every pooled observation, the
/// kernel sum over the quadruples that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UStatSummary {
    m: usize,
    n: usize,
    total_quarters: i64,
    per_index_quarters: Vec<i64>,
}

impl UStatSummary {
    /// Direct single pass over all `C(m,2)·C(n,2)` quadruples, adding each
    /// kernel value to the total and to its four participating indices.
    ///
    /// Cost is `O(m²n²)`; [`UStatSummary::compute`] gives identical results in
    /// `O((m+n) log(m+n))`.
    pub fn enumerate(x: &Sample, y: &Sample) -> Result<Self> {
        let (xs, ys) = (x.values(), y.values());
        let (m, n) = (xs.len(), ys.len());
        check_sizes(x, y, 2)?;
        let identity = || (0i64, vec![0i64; m + n]);
        let (total_quarters, per_index_quarters) = (0..m)
            .into_par_iter()
            .fold(identity, |(mut total, mut per), i| {
                for j in i + 1..m {
                    for k in 0..n {
                        for l in k + 1..n {
                            let q = i64::from(kernel_sym_quarters(xs[i], xs[j], ys[k], ys[l]));
                            if q != 0 {
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
            })
            .reduce(identity, |(ta, mut pa), (tb, pb)| {
                pa.iter_mut().zip(&pb).for_each(|(a, b)| *a += b);
                (ta + tb, pa)
            });
        Ok(Self {
            m,
            n,
            total_quarters,
            per_index_quarters,
        })
    }

    /// Same aggregates as [`UStatSummary::enumerate`], obtained by counting
    /// indicator hits with prefix sums over the sorted samples.
    pub fn compute(x: &Sample, y: &Sample) -> Result<Self> {
        check_sizes(x, y, 2)?;
        let (xs, ys) = (x.values(), y.values());
        let (m, n) = (xs.len(), ys.len());
        // Ordered tuples with a y-observation on top: the `+1` indicator.
        let up = PatternCount::new(xs, ys);
        // Roles exchanged: the `-1` indicator.
        let down = PatternCount::new(ys, xs);
        let mut per_index_quarters = Vec::with_capacity(m + n);
        per_index_quarters.extend(up.low_roles.iter().zip(&down.top_roles).map(|(a, b)| a - b));
        per_index_quarters.extend(up.top_roles.iter().zip(&down.low_roles).map(|(a, b)| a - b));
        Ok(Self {
            m,
            n,
            total_quarters: up.total - down.total,
            per_index_quarters,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Four times the kernel sum; an exact integer.
    pub fn total_quarters(&self) -> i64 {
        self.total_quarters
    }

    pub fn per_index_quarters(&self) -> &[i64] {
        &self.per_index_quarters
    }

    pub fn total(&self) -> f64 {
        self.total_quarters as f64 / 4.0
    }

    pub fn per_index(&self) -> impl Iterator<Item = f64> + '_ {
        self.per_index_quarters.iter().map(|&q| q as f64 / 4.0)
    }

    /// The U-statistic: kernel mean over all pairs-of-pairs.
    pub fn u(&self) -> f64 {
        self.total() / (choose2(self.m) * choose2(self.n))
    }

    /// U-statistic recomputed without pooled observation `i`.
    pub fn leave_one_out(&self, i: usize) -> f64 {
        let rest = (self.total_quarters - self.per_index_quarters[i]) as f64 / 4.0;
        let pairs = if i < self.m {
            choose2(self.m - 1) * choose2(self.n)
        } else {
            choose2(self.m) * choose2(self.n - 1)
        };
        rest / pairs
    }
}

fn check_sizes(x: &Sample, y: &Sample, needed: usize) -> Result<()> {
    for s in [x, y] {
        if s.len() < needed {
            return Err(Error::InsufficientData {
                group: s.label().to_string(),
                needed,
                got: s.len(),
            });
        }
    }
    Ok(())
}

/// Counts ordered tuples `(q1, q2, p1, p2)`, `q1 != q2` drawn from `low`,
/// `p1 != p2` drawn from `top`, with `low[q1] < top[p1]`, `low[q2] < top[p1]`
/// and `top[p2] < low[q2] < top[p1]`, together with, for every observation,
/// how many such tuples contain it. Both slices must be sorted.
///
/// With `low = x` and `top = y` this is the positive indicator of the raw
/// kernel summed over all argument orderings; swapping the slices gives the
/// negative one.
struct PatternCount {
    total: i64,
    low_roles: Vec<i64>,
    top_roles: Vec<i64>,
}

impl PatternCount {
    fn new(low: &[f64], top: &[f64]) -> Self {
        let below = |s: &[f64], t: f64| s.partition_point(|&v| v < t);
        let above = |s: &[f64], t: f64| s.partition_point(|&v| v <= t);

        // #low below each top value, and #top below each low value.
        let low_below_top: Vec<i64> = top.iter().map(|&t| below(low, t) as i64).collect();
        let top_below_low: Vec<i64> = low.iter().map(|&t| below(top, t) as i64).collect();

        // g_prefix[s] = sum of top_below_low[..s]; G(t) sums over low values < t.
        let g_prefix = prefix_sums(top_below_low.iter().copied());
        let g_at_top: Vec<i64> = top.iter().map(|&t| g_prefix[below(low, t)]).collect();

        // h_suffix[s] = sum over top[s..] of (#low below - 1); H(t) sums over top values > t.
        let h_suffix = suffix_sums(low_below_top.iter().map(|c| c - 1));
        let h_at_low: Vec<i64> = low.iter().map(|&t| h_suffix[above(top, t)]).collect();

        let gh_suffix = suffix_sums(g_at_top.iter().copied());
        let hl_suffix = suffix_sums(h_at_low.iter().copied());

        let total = low_below_top
            .iter()
            .zip(&g_at_top)
            .map(|(c, g)| (c - 1) * g)
            .sum();

        let low_roles = low
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let start = above(top, t);
                let tops_above = (top.len() - start) as i64;
                let as_q2 = top_below_low[i] * h_at_low[i];
                let as_q1 = gh_suffix[start] - top_below_low[i] * tops_above;
                as_q1 + as_q2
            })
            .collect();

        let top_roles = top
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                let as_p1 = (low_below_top[k] - 1) * g_at_top[k];
                let as_p2 = hl_suffix[above(low, t)];
                as_p1 + as_p2
            })
            .collect();

        Self {
            total,
            low_roles,
            top_roles,
        }
    }
}

fn prefix_sums(it: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut out = vec![0];
    let mut acc = 0;
    for v in it {
        acc += v;
        out.push(acc);
    }
    out
}

fn suffix_sums(it: impl DoubleEndedIterator<Item = i64> + ExactSizeIterator) -> Vec<i64> {
    let mut out = vec![0; it.len() + 1];
    let mut acc = 0;
    for (i, v) in it.enumerate().rev() {
        acc += v;
        out[i] = acc;
    }
    out
}

/// U-statistic summary for the pair, baseline sample first.
pub fn u_statistic(x: &Sample, y: &Sample) -> Result<UStatSummary> {
    UStatSummary::compute(x, y)
}

/// Jackknife pseudo-values and their expectations at a hypothesized departure.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoValues {
    pub v: Vec<f64>,
    pub ev: Vec<f64>,
    pub delta0: f64,
}

impl PseudoValues {
    /// `v - ev`, the vector the empirical-likelihood constraint is placed on.
    pub fn centered(&self) -> Vec<f64> {
        self.v.iter().zip(&self.ev).map(|(v, e)| v - e).collect()
    }

    pub fn mean(&self) -> f64 {
        self.v.iter().sum::<f64>() / self.v.len() as f64
    }
}

/// Expected pseudo-values at departure `delta`:
/// `Δ(m+n)(2n-m-2)/((m+n-4)m)` for baseline indices and
/// `Δ(m+n)(2m-n-2)/((m+n-4)n)` for comparison indices.
pub fn expected_pseudovalues(m: usize, n: usize, delta: f64) -> Result<Vec<f64>> {
    if m == 0 || n == 0 || m + n <= 4 {
        return Err(Error::InsufficientData {
            group: "pooled".into(),
            needed: 5,
            got: m + n,
        });
    }
    let (mf, nf) = (m as f64, n as f64);
    let big = mf + nf;
    let ex = delta * big * (2.0 * nf - mf - 2.0) / ((big - 4.0) * mf);
    let ey = delta * big * (2.0 * mf - nf - 2.0) / ((big - 4.0) * nf);
    let mut ev = vec![ex; m];
    ev.resize(m + n, ey);
    Ok(ev)
}

/// Pseudo-values `N·U - (N-1)·U^(-i)` using the per-index aggregates.
pub fn jackknife_pseudovalues(summary: &UStatSummary, delta0: f64) -> Result<PseudoValues> {
    let (m, n) = (summary.m(), summary.n());
    for (group, got) in [("baseline", m), ("comparison", n)] {
        if got < 3 {
            return Err(Error::InsufficientData {
                group: group.into(),
                needed: 3,
                got,
            });
        }
    }
    let big = (m + n) as f64;
    let u = summary.u();
    let v = (0..m + n)
        .map(|i| big * u - (big - 1.0) * summary.leave_one_out(i))
        .collect();
    Ok(PseudoValues {
        v,
        ev: expected_pseudovalues(m, n, delta0)?,
        delta0,
    })
}
