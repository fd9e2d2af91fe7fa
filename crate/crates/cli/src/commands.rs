use std::fs;
use std::hint::black_box;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use jbhash::golden::{builtin_matrix, format_golden, parse_golden, verify_golden};
use jbhash::stats::{
    consumption_csv, experiment_key, format_sig, run_consumption_experiment,
    run_monotonicity_check, run_uniformity_check, GofMethod,
};
use jbhash::{Algorithm, BucketCount};

use crate::{GoldenArgs, UniformityArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Stdout(#[from] io::Error),
    #[error(transparent)]
    Core(#[from] jbhash::Error),
    #[error("{0}")]
    Usage(String),
}

pub enum Status {
    Pass,
    Fail,
}

type CmdResult = Result<Status, CliError>;

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_owned(), source }
}

fn verdict(pass: bool) -> (Status, &'static str) {
    if pass {
        (Status::Pass, "pass")
    } else {
        (Status::Fail, "fail")
    }
}

pub fn map(algo: Algorithm, key: u64, n: BucketCount, count: bool) -> CmdResult {
    let (bucket, invocations) = algo.bucket_counted(key, n);
    if count {
        println!("bucket={bucket} invocations={invocations}");
    } else {
        println!("bucket={bucket}");
    }
    Ok(Status::Pass)
}

pub fn scan(algo: Algorithm, key: u64, n_max: BucketCount) -> CmdResult {
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut previous = 0;
    let mut reassignments = 0u64;
    let mut violations = 0u64;
    writeln!(out, "n=1 bucket=0")?;
    for size in 2..=n_max.get() {
        let bucket = algo.bucket(key, BucketCount::new(size)?).get();
        if bucket != previous {
            reassignments += 1;
            if bucket == size - 1 {
                writeln!(out, "n={size} bucket={bucket}")?;
            } else {
                violations += 1;
                writeln!(out, "n={size} bucket={bucket} non-monotone")?;
            }
            previous = bucket;
        }
    }
    writeln!(out, "reassignments={reassignments} violations={violations}")?;
    out.flush()?;
    Ok(Status::Pass)
}

pub fn consumption(algo: Algorithm, n_list: &[BucketCount], keys: u64, seed: u64, out: Option<&Path>) -> CmdResult {
    if keys == 0 {
        return Err(CliError::Usage("--keys must be at least 1".into()));
    }
    let summaries = run_consumption_experiment(algo, n_list, keys, seed)?;
    let csv = consumption_csv(&summaries);
    match out {
        Some(path) => fs::write(path, csv).map_err(io_error(path))?,
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    eprintln!(
        "max_mean_error={} max_variance_error={}",
        format_sig(max_or_nan(summaries.iter().map(|s| s.mean_error())), 9),
        format_sig(max_or_nan(summaries.iter().map(|s| s.variance_error())), 9)
    );
    Ok(Status::Pass)
}

// NaN (no closed form) wins over any number
fn max_or_nan(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

pub fn check_monotonicity(algo: Algorithm, runs: u64, n_max: BucketCount, seed: u64) -> CmdResult {
    let violations = run_monotonicity_check(algo, runs, n_max.get(), seed);
    let (status, word) = verdict(violations == 0);
    println!(
        "check=monotonicity algo={algo} runs={runs} n_max={n_max} seed={seed:#018x} violations={violations} result={word}"
    );
    Ok(status)
}

pub fn check_uniformity(args: &UniformityArgs) -> CmdResult {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(CliError::Usage(format!("--alpha must lie in (0, 1), got {}", args.alpha)));
    }
    if args.keys == 0 {
        return Err(CliError::Usage("--keys must be at least 1".into()));
    }
    let report = run_uniformity_check(args.algo, args.keys, &args.n_list, args.alpha, args.seed)?;
    if args.verbose {
        for (n, r) in &report.results {
            let method = match r.method {
                GofMethod::GTest => "g-test",
                GofMethod::KolmogorovSmirnov => "ks",
                GofMethod::Skipped => "skipped",
            };
            println!(
                "n={n} method={method} statistic={} p={}",
                format_sig(r.statistic, 9),
                format_sig(r.p_value, 9)
            );
        }
    }
    let fraction = report.rejection_fraction();
    let (status, word) = verdict(fraction <= args.max_rejection);
    println!(
        "check=uniformity algo={} keys={} tested={} rejections={} rejection_fraction={} alpha={} result={word}",
        args.algo,
        args.keys,
        report.tested(),
        report.rejections(),
        format_sig(fraction, 9),
        args.alpha
    );
    Ok(status)
}

pub fn golden(args: &GoldenArgs) -> CmdResult {
    if let Some(path) = &args.write {
        let records = builtin_matrix();
        fs::write(path, format_golden(&records)).map_err(io_error(path))?;
        println!("records={} written={}", records.len(), path.display());
        return Ok(Status::Pass);
    }
    let path = args.verify.as_deref().expect("clap requires one of --write/--verify");
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    let records = parse_golden(&text)?;
    let mismatches = verify_golden(&records);
    for m in &mismatches {
        println!("mismatch expected={} actual={}", m.expected, m.actual);
    }
    let (status, word) = verdict(mismatches.is_empty() && !records.is_empty());
    println!("records={} mismatches={} result={word}", records.len(), mismatches.len());
    Ok(status)
}

pub fn bench(algos: &[Algorithm], n_list: &[BucketCount], keys: u64, seed: u64) -> CmdResult {
    if keys == 0 {
        return Err(CliError::Usage("--keys must be at least 1".into()));
    }
    let key_set: Vec<u64> = (0..keys).map(|i| experiment_key(seed, i)).collect();
    let mut out = io::stdout().lock();
    writeln!(out, "algo,n,ns_per_op,mean_invocations")?;
    for &algo in algos {
        for &n in n_list {
            let words: u64 = key_set.iter().map(|&k| algo.bucket_counted(k, n).1).sum();
            let start = Instant::now();
            let mut acc = 0u32;
            for &k in &key_set {
                acc ^= algo.bucket(black_box(k), n).get();
            }
            black_box(acc);
            let ns = start.elapsed().as_nanos() as f64 / keys as f64;
            writeln!(out, "{algo},{n},{ns:.3},{}", format_sig(words as f64 / keys as f64, 9))?;
            out.flush()?;
        }
    }
    Ok(Status::Pass)
}
