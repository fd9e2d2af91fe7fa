//! Reproducible experiment runners.
//!
//! Keys come from a SplitMix64 stream seeded with the experiment seed; key
//! `i` is the `i`-th output, so work can be split into fixed chunks and
//! handed to any number of workers without changing a single result.

use std::fmt::Write as _;
use std::ops::Range;

use super::gof::{g_test, ks_test, GofResult};
use super::theory::ConsumptionTheory;
use crate::error::{Error, Result};
use crate::hashers::{Algorithm, BucketCount};
use crate::prg::SplitMix64;

/// Keys per work unit. Fixed so that merged floating-point results do not
/// depend on the worker count.
const CHUNK: u64 = 1 << 14;

/// Environment variable overriding the number of worker threads.
pub const WORKERS_ENV: &str = "JBH_WORKERS";

pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Key `index` of the experiment stream.
#[inline]
pub fn experiment_key(seed: u64, index: u64) -> u64 {
    SplitMix64::nth_output(seed, index)
}

/// Applies `work` to consecutive chunks of `range` and returns the results
/// in chunk order.
pub fn map_chunks<A, F>(range: Range<u64>, work: F) -> Vec<A>
where
    A: Send,
    F: Fn(Range<u64>) -> A + Sync,
{
    let chunks: Vec<Range<u64>> = (range.start..range.end)
        .step_by(CHUNK as usize)
        .map(|s| s..(s + CHUNK).min(range.end))
        .collect();
    let workers = worker_count().min(chunks.len()).max(1);
    if workers == 1 {
        return chunks.into_iter().map(&work).collect();
    }
    let mut slots: Vec<Option<A>> = chunks.iter().map(|_| None).collect();
    let per_worker = chunks.len().div_ceil(workers);
    std::thread::scope(|scope| {
        for (ranges, out) in chunks.chunks(per_worker).zip(slots.chunks_mut(per_worker)) {
            let work = &work;
            scope.spawn(move || {
                for (r, slot) in ranges.iter().zip(out) {
                    *slot = Some(work(r.clone()));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every chunk is processed")).collect()
}

/// Single-pass mean and variance with an associative merge.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        self.mean += delta * weight;
        self.m2 += other.m2 + delta * delta * self.count as f64 * weight;
        self.count = count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; 0 for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }
}

/// Empirical consumption for one bucket count next to its closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsumptionSummary {
    pub n: BucketCount,
    pub sample_count: u64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub theory: ConsumptionTheory,
}

impl ConsumptionSummary {
    pub fn mean_error(&self) -> f64 {
        (self.empirical_mean - self.theory.mean).abs()
    }

    pub fn variance_error(&self) -> f64 {
        (self.empirical_variance - self.theory.variance).abs()
    }
}

/// `n0, floor(f n0), floor(f^2 n0), ...` down to 1.
pub fn geometric_n_sequence(n0: u64, factor: f64) -> Result<Vec<u64>> {
    if n0 == 0 || !(factor > 0.0 && factor < 1.0) {
        return Err(Error::Domain(format!(
            "geometric sequence needs n0 >= 1 and 0 < factor < 1, got ({n0}, {factor})"
        )));
    }
    let mut seq = vec![n0];
    let mut n = n0;
    loop {
        let next = ((factor * n as f64).floor() as u64).min(n - 1);
        if next == 0 {
            break;
        }
        seq.push(next);
        n = next;
    }
    Ok(seq)
}

/// Evaluates `algo` for `keys_per_n` fresh keys per bucket count and
/// summarises the number of generator words consumed.
pub fn run_consumption_experiment(
    algo: Algorithm,
    n_list: &[BucketCount],
    keys_per_n: u64,
    seed: u64,
) -> Result<Vec<ConsumptionSummary>> {
    if keys_per_n == 0 {
        return Err(Error::Domain("keys_per_n must be at least 1".into()));
    }
    let summaries = n_list
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let offset = i as u64 * keys_per_n;
            let moments = map_chunks(offset..offset + keys_per_n, |keys| {
                let mut acc = RunningMoments::default();
                for index in keys {
                    let (_, words) = algo.bucket_counted(experiment_key(seed, index), n);
                    acc.push(words as f64);
                }
                acc
            })
            .iter()
            .fold(RunningMoments::default(), |mut total, part| {
                total.merge(part);
                total
            });
            ConsumptionSummary {
                n,
                sample_count: moments.count(),
                empirical_mean: moments.mean(),
                empirical_variance: moments.variance(),
                theory: ConsumptionTheory::for_algorithm(algo, n),
            }
        })
        .collect();
    Ok(summaries)
}

pub const CONSUMPTION_CSV_HEADER: &str =
    "n,samples,mean_empirical,variance_empirical,mean_theory,variance_theory";

pub fn consumption_csv(summaries: &[ConsumptionSummary]) -> String {
    let mut out = String::with_capacity(64 * (summaries.len() + 1));
    out.push_str(CONSUMPTION_CSV_HEADER);
    out.push('\n');
    for s in summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.n,
            s.sample_count,
            format_sig(s.empirical_mean, 9),
            format_sig(s.empirical_variance, 9),
            format_sig(s.theory.mean, 9),
            format_sig(s.theory.variance, 9),
        );
    }
    out
}

/// `%.{digits}g`-style formatting.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Sweeps `n = 1..=n_max` for `runs` random keys and counts every step
/// where the bucket moved somewhere other than the new bucket `n - 1`.
pub fn run_monotonicity_check(algo: Algorithm, runs: u64, n_max: u32, seed: u64) -> u64 {
    if n_max < 2 {
        return 0;
    }
    map_chunks(0..runs, |range| {
        range
            .map(|run| {
                let key = experiment_key(seed, run);
                let mut violations = 0;
                let mut previous = 0;
                for size in 2..=n_max {
                    let n = BucketCount::new(size).expect("n_max within bucket range");
                    let b = algo.bucket(key, n).get();
                    if b != previous && b != size - 1 {
                        violations += 1;
                    }
                    previous = b;
                }
                violations
            })
            .sum::<u64>()
    })
    .into_iter()
    .sum()
}

/// Per-`n` goodness-of-fit results of a uniformity sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformityReport {
    pub alpha: f64,
    pub results: Vec<(BucketCount, GofResult)>,
}

impl UniformityReport {
    /// Tests actually run (single-bucket entries are skipped).
    pub fn tested(&self) -> usize {
        self.results
            .iter()
            .filter(|(_, r)| r.method != super::gof::GofMethod::Skipped)
            .count()
    }

    pub fn rejections(&self) -> usize {
        self.results.iter().filter(|(_, r)| r.rejected_at(self.alpha)).count()
    }

    pub fn rejection_fraction(&self) -> f64 {
        match self.tested() {
            0 => 0.0,
            tested => self.rejections() as f64 / tested as f64,
        }
    }
}

/// Buckets `keys` fresh keys per bucket count. Uses the G-test where every
/// bucket expects at least 100 keys and the KS test otherwise.
pub fn run_uniformity_check(
    algo: Algorithm,
    keys: u64,
    n_list: &[BucketCount],
    alpha: f64,
    seed: u64,
) -> Result<UniformityReport> {
    let mut results = Vec::with_capacity(n_list.len());
    for (i, &n) in n_list.iter().enumerate() {
        let offset = i as u64 * keys;
        let size = u64::from(n.get());
        let result = if size == 1 {
            GofResult::skipped(keys)
        } else if keys >= 100 * size {
            let counts = map_chunks(offset..offset + keys, |range| {
                let mut counts = vec![0u64; size as usize];
                for index in range {
                    counts[algo.bucket(experiment_key(seed, index), n).get() as usize] += 1;
                }
                counts
            })
            .into_iter()
            .reduce(|mut total, part| {
                total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
                total
            })
            .unwrap_or_default();
            g_test(&counts)?
        } else {
            let samples: Vec<u64> = map_chunks(offset..offset + keys, |range| {
                range
                    .map(|index| u64::from(algo.bucket(experiment_key(seed, index), n).get()))
                    .collect::<Vec<_>>()
            })
            .concat();
            ks_test(&samples, size)?
        };
        results.push((n, result));
    }
    Ok(UniformityReport { alpha, results })
}

/// Counts keys with `f(k, n) != f(k, n + 1)`.
pub fn run_reassignment_check(algo: Algorithm, n: BucketCount, keys: u64, seed: u64) -> Result<u64> {
    let next = BucketCount::new(n.get() + 1)?;
    Ok(map_chunks(0..keys, |range| {
        range
            .filter(|&index| {
                let key = experiment_key(seed, index);
                algo.bucket(key, n) != algo.bucket(key, next)
            })
            .count() as u64
    })
    .into_iter()
    .sum())
}
