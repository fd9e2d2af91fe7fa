//! Goodness-of-fit tests against the uniform distribution over buckets.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Truncation threshold for the Kolmogorov series.
const SERIES_EPS: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GofMethod {
    GTest,
    KolmogorovSmirnov,
    /// A single bucket is trivially uniform.
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GofResult {
    pub method: GofMethod,
    pub statistic: f64,
    /// Chi-square degrees of freedom (G-test only).
    pub degrees_of_freedom: Option<u64>,
    pub sample_size: u64,
    pub p_value: f64,
}

impl GofResult {
    pub(crate) fn skipped(sample_size: u64) -> Self {
        Self {
            method: GofMethod::Skipped,
            statistic: 0.0,
            degrees_of_freedom: None,
            sample_size,
            p_value: 1.0,
        }
    }

    pub fn rejected_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// `2 * sum O ln(O / E)` against equal expected counts; empty cells add 0.
pub fn g_statistic(observed: &[u64]) -> f64 {
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let expected = total as f64 / observed.len() as f64;
    2.0 * observed
        .iter()
        .filter(|&&o| o > 0)
        .map(|&o| o as f64 * (o as f64 / expected).ln())
        .sum::<f64>()
}

/// Upper tail of the chi-square distribution.
pub fn chi_square_sf(statistic: f64, degrees_of_freedom: u64) -> f64 {
    if statistic.is_nan() || statistic <= 0.0 {
        return 1.0;
    }
    let dist = ChiSquared::new(degrees_of_freedom as f64).expect("degrees of freedom >= 1");
    dist.sf(statistic).clamp(0.0, 1.0)
}

/// G-test of per-bucket counts against uniformity. Requires at least two
/// cells and an expected count of at least 100 per cell.
pub fn g_test(observed: &[u64]) -> Result<GofResult> {
    let cells = observed.len() as u64;
    let total: u64 = observed.iter().sum();
    if cells < 2 {
        return Err(Error::Domain("G-test needs at least two buckets".into()));
    }
    if total < 100 * cells {
        return Err(Error::Domain(format!(
            "G-test needs >= {} samples for {cells} buckets, got {total}",
            100 * cells
        )));
    }
    let statistic = g_statistic(observed);
    Ok(GofResult {
        method: GofMethod::GTest,
        statistic,
        degrees_of_freedom: Some(cells - 1),
        sample_size: total,
        p_value: chi_square_sf(statistic, cells - 1),
    })
}

/// Survival function of the asymptotic Kolmogorov distribution,
/// `P(K > lambda)`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda.is_nan() || lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // the alternating series converges slowly here; use the theta form
        // P(K <= x) = sqrt(2 pi) / x * sum exp(-(2j - 1)^2 pi^2 / (8 x^2))
        let scale = -std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda);
        let mut sum = 0.0;
        for j in 1.. {
            let odd = f64::from(2 * j - 1);
            let term = (scale * odd * odd).exp();
            sum += term;
            if term == 0.0 || term < SERIES_EPS * sum {
                break;
            }
        }
        let cdf = (2.0 * std::f64::consts::PI).sqrt() / lambda * sum;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        for j in 1..=100 {
            let jf = f64::from(j);
            let term = (-2.0 * jf * jf * lambda * lambda).exp();
            sum += if j % 2 == 1 { term } else { -term };
            if term < SERIES_EPS {
                break;
            }
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// Two-sided KS statistic of bucket samples against the uniform CDF on
/// `(0, 1]`, mapping bucket `b` to `(b + 1) / n`. Samples are positions on
/// the ring of `n` buckets, so they are taken modulo `n`.
pub fn ks_statistic(samples: &[u64], n: u64) -> f64 {
    let mut xs: Vec<f64> = samples
        .iter()
        .map(|&b| ((b % n) + 1) as f64 / n as f64)
        .collect();
    xs.sort_unstable_by(f64::total_cmp);
    let count = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let above = (i + 1) as f64 / count - x;
            let below = x - i as f64 / count;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

pub fn ks_test(samples: &[u64], n: u64) -> Result<GofResult> {
    if samples.is_empty() {
        return Err(Error::Domain("KS test needs a non-empty sample".into()));
    }
    if n < 2 {
        return Err(Error::Domain(format!("KS test needs n >= 2, got {n}")));
    }
    let statistic = ks_statistic(samples, n);
    let size = samples.len() as u64;
    Ok(GofResult {
        method: GofMethod::KolmogorovSmirnov,
        statistic,
        degrees_of_freedom: None,
        sample_size: size,
        p_value: kolmogorov_sf((size as f64).sqrt() * statistic),
    })
}
