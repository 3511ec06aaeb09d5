//! Shared fixtures and statistical helpers for the integration tests.

#![allow(dead_code)] // each test binary uses its own subset

use distkit::{Distribution, Family, Univariate, UnivariateDist, ValueSupport};

/// Probability levels exercised by the quantile/cdf round-trip checks.
pub const P_GRID: [f64; 15] = [
    0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.975, 0.99, 0.995, 0.999,
];

/// Five parameter sets for each of the ten families, spanning location,
/// scale, and shape regimes (including the specialized-sampler switchover
/// for Poisson).
pub fn family_fixtures() -> Vec<UnivariateDist> {
    let mut out = Vec::new();
    let mut push = |family: Family, params: &[f64]| {
        out.push(
            UnivariateDist::from_params(family, params)
                .unwrap_or_else(|e| panic!("fixture {family} {params:?}: {e}")),
        );
    };

    push(Family::Uniform, &[0.0, 1.0]);
    push(Family::Uniform, &[-3.0, 5.0]);
    push(Family::Uniform, &[2.5, 7.5]);
    push(Family::Uniform, &[-2.0, -1.0]);
    push(Family::Uniform, &[10.0, 1000.0]);

    push(Family::Normal, &[0.0, 1.0]);
    push(Family::Normal, &[50.0, 10.0]);
    push(Family::Normal, &[-3.0, 0.5]);
    push(Family::Normal, &[1000.0, 1.0]);
    push(Family::Normal, &[0.3, 7.0]);

    push(Family::LogNormal, &[0.0, 1.0]);
    push(Family::LogNormal, &[0.0, 0.25]);
    push(Family::LogNormal, &[1.5, 0.8]);
    push(Family::LogNormal, &[-1.0, 2.0]);
    push(Family::LogNormal, &[3.0, 0.1]);

    push(Family::Gamma, &[1.0, 1.0]);
    push(Family::Gamma, &[10.0, 2.0]);
    push(Family::Gamma, &[0.5, 1.0]);
    push(Family::Gamma, &[7.5, 0.3]);
    push(Family::Gamma, &[2.0, 5.0]);

    push(Family::Exponential, &[1.0]);
    push(Family::Exponential, &[0.1]);
    push(Family::Exponential, &[10.0]);
    push(Family::Exponential, &[3.5]);
    push(Family::Exponential, &[250.0]);

    push(Family::Cauchy, &[0.0, 1.0]);
    push(Family::Cauchy, &[-5.0, 2.0]);
    push(Family::Cauchy, &[100.0, 0.5]);
    push(Family::Cauchy, &[0.0, 10.0]);
    push(Family::Cauchy, &[3.0, 0.05]);

    push(Family::Triangular, &[0.0, 1.0, 0.5]);
    push(Family::Triangular, &[-1.0, 1.0]); // symmetric two-parameter form
    push(Family::Triangular, &[2.0, 10.0, 3.0]);
    push(Family::Triangular, &[0.0, 5.0, 5.0]); // mode at the upper end
    push(Family::Triangular, &[-4.0, -1.0, -3.5]);

    push(Family::Poisson, &[0.5]);
    push(Family::Poisson, &[4.0]);
    push(Family::Poisson, &[10.0]);
    push(Family::Poisson, &[30.0]);
    push(Family::Poisson, &[100.0]);

    push(Family::Bernoulli, &[0.5]);
    push(Family::Bernoulli, &[0.2]);
    push(Family::Bernoulli, &[0.01]);
    push(Family::Bernoulli, &[0.99]);
    push(Family::Bernoulli, &[0.7]);

    push(Family::Categorical, &[0.25, 0.25, 0.5]);
    push(Family::Categorical, &[0.2, 0.3, 0.5]);
    push(Family::Categorical, &[0.5, 0.5]);
    push(Family::Categorical, &[0.05, 0.1, 0.15, 0.2, 0.5]);
    push(Family::Categorical, &[0.3, 0.0, 0.7]); // zero-probability label

    assert_eq!(out.len(), 50);
    out
}

/// `n` evenly spaced points spanning the support (clipped to the 1e-4 /
/// 1 − 1e-4 quantiles where an end is infinite).
pub fn support_grid(d: &UnivariateDist, n: usize) -> Vec<f64> {
    let support = d.support();
    let lo = if support.lower.is_finite() {
        support.lower
    } else {
        d.quantile(1e-4).unwrap()
    };
    let hi = if support.upper.is_finite() {
        support.upper
    } else {
        d.quantile(1.0 - 1e-4).unwrap()
    };
    linspace(lo, hi, n)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        // Pin the final point: accumulated rounding must not push it past
        // `hi` (a support edge, where bounded densities drop to zero).
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Two-sided Kolmogorov–Smirnov statistic of a sample against `cdf`.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Asymptotic critical value for the two-sided KS test: `√(ln(2/α) / 2n)`.
pub fn ks_critical(alpha: f64, n: usize) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

/// Upper-tail χ² critical values at α = 0.001, indexed by degrees of
/// freedom 1..=30 (standard distribution tables).
const CHI2_CRIT_001: [f64; 30] = [
    10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124, 27.877, 29.588, 31.264,
    32.909, 34.528, 36.123, 37.697, 39.252, 40.790, 42.312, 43.820, 45.315, 46.797, 48.268,
    49.728, 51.179, 52.620, 54.052, 55.476, 56.892, 58.301, 59.703,
];

pub fn chi2_critical_001(df: usize) -> f64 {
    assert!(
        (1..=CHI2_CRIT_001.len()).contains(&df),
        "no tabulated critical value for df = {df}"
    );
    CHI2_CRIT_001[df - 1]
}

/// Pearson χ² statistic over pre-binned counts; `expected` entries must be
/// positive.
pub fn chi2_statistic(observed: &[f64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    observed
        .iter()
        .zip(expected)
        .map(|(o, e)| {
            assert!(*e > 0.0, "expected count must be positive, got {e}");
            (o - e) * (o - e) / e
        })
        .sum()
}

/// Goodness-of-fit χ² test for a count distribution (Poisson): groups
/// consecutive support points until each bin holds ≥ 4% of the probability
/// mass, keeping the expected counts large and the degrees of freedom inside
/// the tabulated range, then compares at α = 0.001. Panics on rejection.
pub fn assert_chi2_counts(d: &UnivariateDist, samples: &[f64]) {
    assert_eq!(d.value_support(), ValueSupport::Discrete);
    let n = samples.len();
    let (lo, hi) = d.integer_support().expect("discrete family");
    let hi = match hi {
        Some(h) => h,
        // Unbounded count support: cut at the 1 − 1e-12 quantile; everything
        // beyond joins the last bin.
        None => d.quantile(1.0 - 1e-12).unwrap() as u64,
    };

    let mut edges: Vec<u64> = Vec::new(); // inclusive upper ends
    let mut bin_mass = Vec::new();
    let mut acc = 0.0;
    let mut prev_cdf = 0.0;
    for k in lo..=hi {
        let c = d.cdf(k as f64);
        acc += c - prev_cdf;
        prev_cdf = c;
        if acc >= 0.04 {
            edges.push(k);
            bin_mass.push(acc);
            acc = 0.0;
        }
    }
    // Fold the leftover upper tail (sub-threshold remainder plus the mass
    // beyond `hi`) into the last bin.
    let tail = 1.0 - bin_mass.iter().sum::<f64>();
    *bin_mass.last_mut().unwrap() += tail;
    *edges.last_mut().unwrap() = u64::MAX;

    let mut observed = vec![0.0; bin_mass.len()];
    for &x in samples {
        let k = x as u64;
        let idx = edges.partition_point(|&e| e < k);
        observed[idx] += 1.0;
    }
    let expected: Vec<f64> = bin_mass.iter().map(|m| m * n as f64).collect();

    let stat = chi2_statistic(&observed, &expected);
    let crit = chi2_critical_001(bin_mass.len() - 1);
    assert!(
        stat < crit,
        "chi-square rejected {}: stat {stat:.3} >= crit {crit:.3} ({} bins)",
        d.descriptor().family,
        bin_mass.len(),
    );
}

/// Goodness-of-fit χ² test over the raw categories of a finite discrete
/// support (Bernoulli, Categorical). Zero-probability labels must not be
/// observed and are excluded from the statistic.
pub fn assert_chi2_categories(d: &UnivariateDist, samples: &[f64]) {
    assert_eq!(d.value_support(), ValueSupport::Discrete);
    let n = samples.len();
    let (lo, hi) = d.integer_support().expect("discrete family");
    let hi = hi.expect("finite support");

    let mut observed = Vec::new();
    let mut expected = Vec::new();
    let mut prev_cdf = if lo == 0 { 0.0 } else { d.cdf(lo as f64 - 1.0) };
    for k in lo..=hi {
        let c = d.cdf(k as f64);
        let mass = c - prev_cdf;
        prev_cdf = c;
        let count = samples.iter().filter(|&&x| x == k as f64).count() as f64;
        if mass == 0.0 {
            assert_eq!(count, 0.0, "drew label {k} with zero probability");
        } else {
            observed.push(count);
            expected.push(mass * n as f64);
        }
    }
    assert_eq!(
        observed.iter().sum::<f64>(),
        n as f64,
        "samples outside the support"
    );

    let stat = chi2_statistic(&observed, &expected);
    let crit = chi2_critical_001(observed.len() - 1);
    assert!(
        stat < crit,
        "chi-square rejected {}: stat {stat:.3} >= crit {crit:.3}",
        d.descriptor().family,
    );
}
