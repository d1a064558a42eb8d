use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Fixed-point resolution of accumulated values.
const SCALE: f64 = (1u64 << 24) as f64;

/// Count, sum and sum of squares of per-trial values. Each value is rounded
/// to a fixed-point integer once; sums are exact integers, so merging is
/// associative and commutative and the variance has no cancellation error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialStats {
    count: u64,
    sum: i128,
    sum_sq: i128,
}

impl TrialStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut s = Self::new();
        for v in values {
            s.push(v);
        }
        s
    }

    #[inline]
    pub fn push(&mut self, x: f64) {
        let q = (x * SCALE).round() as i128;
        self.count += 1;
        self.sum += q;
        self.sum_sq += q * q;
    }

    pub fn merge(&self, other: &TrialStats) -> TrialStats {
        TrialStats {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        self.sum as f64 / SCALE / self.count as f64
    }

    /// Unbiased sample variance; `None` below two trials.
    pub fn variance(&self) -> Option<f64> {
        if self.count < 2 {
            return None;
        }
        // Σq² - (Σq)²/n with Σq = n a + b, 0 <= b < n
        let n = self.count as i128;
        let a = self.sum.div_euclid(n);
        let b = self.sum.rem_euclid(n);
        let centered = self.sum_sq - n * a * a - 2 * a * b;
        let ss = centered as f64 - (b as f64) * (b as f64) / n as f64;
        Some((ss / (n - 1) as f64 / (SCALE * SCALE)).max(0.0))
    }

    /// Normal-approximation half-width at `confidence`.
    pub fn ci_half(&self, confidence: f64) -> Option<f64> {
        self.variance()
            .map(|v| normal_quantile(0.5 + 0.5 * confidence) * (v / self.count as f64).sqrt())
    }

    pub fn summary(&self, confidence: f64) -> Summary {
        Summary {
            count: self.count,
            mean: self.mean(),
            variance: self.variance(),
            ci_half: self.ci_half(confidence),
        }
    }
}

/// Plain floating-point view of a [`TrialStats`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    pub variance: Option<f64>,
    pub ci_half: Option<f64>,
}

impl Summary {
    /// Summary of `c X`.
    pub fn scaled(&self, c: f64) -> Summary {
        Summary {
            count: self.count,
            mean: c * self.mean,
            variance: self.variance.map(|v| c * c * v),
            ci_half: self.ci_half.map(|h| c.abs() * h),
        }
    }

    pub fn std_error(&self) -> Option<f64> {
        self.variance.map(|v| (v / self.count as f64).sqrt())
    }
}

pub fn normal_quantile(p: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(p)
}

/// Two-sample Kolmogorov–Smirnov statistic; sorts both inputs.
pub fn ks_statistic(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic critical value of the two-sample statistic at `level`.
pub fn ks_critical(n: usize, m: usize, level: f64) -> f64 {
    let c = (-(0.5 * level).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Pearson goodness-of-fit p-value of `observed` counts against `expected`
/// probabilities. Cells with expected count below 5 are pooled.
pub fn chi_square_p_value<K: Ord + Clone>(
    observed: &BTreeMap<K, u64>,
    expected: &BTreeMap<K, f64>,
) -> f64 {
    let total: u64 = observed.values().sum();
    let n = total as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (k, &p) in expected {
        let e = p * n;
        let o = observed.get(k).copied().unwrap_or(0) as f64;
        if e < 5.0 {
            pooled_obs += o;
            pooled_exp += e;
        } else {
            stat += (o - e).powi(2) / e;
            cells += 1;
        }
    }
    // outcomes the model gives no mass
    let stray: u64 = observed
        .iter()
        .filter(|(k, _)| !expected.contains_key(*k))
        .map(|(_, &c)| c)
        .sum();
    pooled_obs += stray as f64;
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        cells += 1;
    } else if pooled_obs > 0.0 {
        return 0.0;
    }
    if cells < 2 {
        return 1.0;
    }
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive dof");
    1.0 - dist.cdf(stat)
}

/// Total variation between an empirical law (counts) and probabilities.
pub fn total_variation<K: Ord + Clone>(observed: &BTreeMap<K, u64>, expected: &BTreeMap<K, f64>) -> f64 {
    let n = observed.values().sum::<u64>() as f64;
    let mut keys: Vec<&K> = observed.keys().chain(expected.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| {
            let o = observed.get(k).copied().unwrap_or(0) as f64 / n;
            let e = expected.get(k).copied().unwrap_or(0.0);
            (o - e).abs()
        })
        .sum::<f64>()
}
