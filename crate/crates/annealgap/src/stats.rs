//! Small statistics toolbox: interpolated quantiles, Tukey box summaries
//! per decade of the minimum gap, and seeded percentile-bootstrap
//! confidence intervals.

use rand::Rng;

use crate::rng::stream;

/// Linearly interpolated quantile of pre-sorted data (the common "type 7"
/// convention). `q` in `[0, 1]`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Geometric mean via the exponential of the mean log.
pub fn geometric_mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        sum += v.ln();
        count += 1;
    }
    assert!(count > 0, "geometric mean of empty data");
    (sum / count as f64).exp()
}

/// Box-and-whisker summary of gap-improvement ratios within one decade of
/// the uncatalyzed minimum gap.
///
/// The decade labeled `10^-exponent` covers gaps in
/// `(10^-(exponent+1), 10^-exponent]`. Whiskers sit on the most extreme
/// data within 1.5 IQR of the quartiles; points beyond are outliers.
#[derive(Debug, Clone, PartialEq)]
pub struct DecadeBin {
    pub exponent: i32,
    pub count: usize,
    pub median: f64,
    pub mean: f64,
    pub q1: f64,
    pub q3: f64,
    pub whisker_lo: f64,
    pub whisker_hi: f64,
    pub outliers: Vec<f64>,
}

/// Decade index of a gap value: the `n` with `10^-(n+1) < delta <= 10^-n`.
pub fn decade_exponent(delta: f64) -> i32 {
    assert!(delta > 0.0 && delta.is_finite());
    let mut n = (-delta.log10()).floor() as i32;
    // settle boundary rounding explicitly
    if delta > 10f64.powi(-n) {
        n -= 1;
    } else if delta <= 10f64.powi(-(n + 1)) {
        n += 1;
    }
    n
}

/// Group `(delta, ratio)` pairs by decade of `delta` and summarize each
/// group's ratios. Bins come back ordered from the largest gaps (smallest
/// exponent) to the smallest.
pub fn decade_bins(pairs: impl IntoIterator<Item = (f64, f64)>) -> Vec<DecadeBin> {
    let mut groups: std::collections::BTreeMap<i32, Vec<f64>> = Default::default();
    for (delta, ratio) in pairs {
        groups.entry(decade_exponent(delta)).or_default().push(ratio);
    }
    groups
        .into_iter()
        .map(|(exponent, mut ratios)| {
            ratios.sort_by(|a, b| a.total_cmp(b));
            let q1 = quantile_sorted(&ratios, 0.25);
            let q3 = quantile_sorted(&ratios, 0.75);
            let iqr = q3 - q1;
            let lo_fence = q1 - 1.5 * iqr;
            let hi_fence = q3 + 1.5 * iqr;
            let whisker_lo = ratios
                .iter()
                .cloned()
                .find(|&r| r >= lo_fence)
                .unwrap_or(q1);
            let whisker_hi = ratios
                .iter()
                .rev()
                .cloned()
                .find(|&r| r <= hi_fence)
                .unwrap_or(q3);
            let outliers = ratios
                .iter()
                .cloned()
                .filter(|&r| r < lo_fence || r > hi_fence)
                .collect();
            DecadeBin {
                exponent,
                count: ratios.len(),
                median: quantile_sorted(&ratios, 0.5),
                mean: ratios.iter().sum::<f64>() / ratios.len() as f64,
                q1,
                q3,
                whisker_lo,
                whisker_hi,
                outliers,
            }
        })
        .collect()
}

/// Percentile bootstrap confidence interval for a statistic of a sample.
///
/// `stat` maps a resampled index multiset to the statistic value. Resamples
/// are drawn from a stream keyed by `seed`, so intervals reproduce exactly.
pub fn bootstrap_ci<F>(
    sample_len: usize,
    resamples: usize,
    ci_level: f64,
    seed: u64,
    stat: F,
) -> (f64, f64)
where
    F: Fn(&[usize]) -> f64,
{
    assert!(sample_len > 0 && resamples > 0);
    assert!((0.0..1.0).contains(&ci_level) && ci_level > 0.0);
    let mut rng = stream(seed);
    let mut stats = Vec::with_capacity(resamples);
    let mut indices = vec![0usize; sample_len];
    for _ in 0..resamples {
        for slot in indices.iter_mut() {
            *slot = rng.random_range(0..sample_len);
        }
        stats.push(stat(&indices));
    }
    stats.sort_by(|a, b| a.total_cmp(b));
    let alpha = 1.0 - ci_level;
    (
        quantile_sorted(&stats, alpha / 2.0),
        quantile_sorted(&stats, 1.0 - alpha / 2.0),
    )
}
