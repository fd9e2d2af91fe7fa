//! Acceptance suite. Runs every criterion at full scale and prints one
//! PASS/FAIL line each; exits nonzero if any criterion fails.

use std::hint::black_box;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jbhash::golden::{builtin_matrix, format_golden, parse_golden, verify_golden};
use jbhash::oracle::{active_indices_from_scores, reconstruct_active_indices};
use jbhash::prg::RandomSource;
use jbhash::stats::{
    experiment_key, geometric_n_sequence, run_consumption_experiment, run_monotonicity_check,
    run_reassignment_check, run_uniformity_check, theory_jump_hash, ConsumptionSummary,
};
use jbhash::{Algorithm, BucketCount, SplitMix64};

const GOLDEN: &str = include_str!("data/golden.csv");
const ALPHA: f64 = 0.001;
const SEED: u64 = 0x5EED_0001;

type Outcome = Result<String, String>;

fn n(v: u32) -> BucketCount {
    BucketCount::new(v).expect("valid bucket count")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn subset(sequence: &[u64], points: usize) -> Vec<BucketCount> {
    let last = sequence.len() - 1;
    (0..points)
        .map(|i| sequence[i * last / (points - 1)])
        .map(|v| n(v as u32))
        .collect()
}

fn consumption_runs() -> Result<Vec<(Algorithm, Vec<ConsumptionSummary>)>, String> {
    let sequence = geometric_n_sequence(1_000_000, 0.999).map_err(|e| e.to_string())?;
    let ns = subset(&sequence, 50);
    [Algorithm::JumpBackHash, Algorithm::JumpBackHashPacked]
        .into_iter()
        .map(|algo| {
            run_consumption_experiment(algo, &ns, 1_000_000, SEED)
                .map(|s| (algo, s))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn n_sequence() -> Outcome {
    let start = Instant::now();
    let sequence = geometric_n_sequence(1_000_000, 0.999).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(
        sequence.len() == 7482 && elapsed < Duration::from_secs(1),
        format!("{} values in {:.1?}", sequence.len(), elapsed),
    )
}

fn consumption_match(runs: &[(Algorithm, Vec<ConsumptionSummary>)]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (algo, summaries) in runs {
        let mean = summaries.iter().map(|s| s.mean_error()).fold(0.0, f64::max);
        let var = summaries.iter().map(|s| s.variance_error()).fold(0.0, f64::max);
        ok &= summaries.len() == 50 && mean <= 0.005 && var <= 0.03;
        detail.push(format!("{algo}: max mean err {mean:.5}, max var err {var:.5}"));
    }
    check(ok, detail.join("; "))
}

fn consumption_bounds(runs: &[(Algorithm, Vec<ConsumptionSummary>)]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (algo, summaries) in runs {
        let worst = summaries.iter().map(|s| s.empirical_mean).fold(0.0, f64::max);
        let bound = match algo {
            Algorithm::JumpBackHash => 3.0,
            _ => 5.0 / 3.0 + 0.01,
        };
        ok &= worst < bound;
        detail.push(format!("{algo}: max mean {worst:.4} < {bound:.4}"));
    }
    check(ok, detail.join("; "))
}

fn monotonicity() -> Outcome {
    let mut total = 0;
    let mut detail = Vec::new();
    for algo in Algorithm::CONSISTENT {
        let start = Instant::now();
        let violations = run_monotonicity_check(algo, 1000, 10_000, SEED);
        total += violations;
        detail.push(format!("{algo}={violations} ({:.0?})", start.elapsed()));
    }
    check(total == 0, format!("1000 keys x n<=10000, violations: {}", detail.join(" ")))
}

fn uniformity_small() -> Outcome {
    let list: Vec<BucketCount> = (2..=200).map(n).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for algo in [Algorithm::JumpBackHashPacked, Algorithm::Icws] {
        let report = run_uniformity_check(algo, 100_000, &list, ALPHA, SEED).map_err(|e| e.to_string())?;
        let fraction = report.rejection_fraction();
        ok &= report.tested() == 199 && fraction <= 0.02;
        detail.push(format!("{algo}: {}/{} rejected", report.rejections(), report.tested()));
    }
    check(ok, detail.join("; "))
}

fn uniformity_large() -> Outcome {
    let list = [i32::MAX as u32, (1 << 30) + 1, 1 << 30, 3 << 28].map(n);
    let mut ok = true;
    let mut detail = Vec::new();
    for algo in [Algorithm::JumpBackHash, Algorithm::JumpBackHashPacked] {
        let report = run_uniformity_check(algo, 1_000_000, &list, ALPHA, SEED).map_err(|e| e.to_string())?;
        let worst = report.results.iter().map(|(_, r)| r.p_value).fold(1.0, f64::min);
        ok &= report.tested() == 4 && report.results.iter().all(|(_, r)| r.p_value > ALPHA);
        detail.push(format!("{algo}: min KS p {worst:.4}"));
    }
    check(ok, detail.join("; "))
}

fn reassignment() -> Outcome {
    let keys = 1_000_000u64;
    let mut ok = true;
    let mut detail = Vec::new();
    for size in [1u32, 2, 10, 100, 1000] {
        let moved = run_reassignment_check(Algorithm::JumpBackHashPacked, n(size), keys, SEED)
            .map_err(|e| e.to_string())?;
        let p = 1.0 / f64::from(size + 1);
        let sigma = (keys as f64 * p * (1.0 - p)).sqrt();
        let z = (moved as f64 - keys as f64 * p) / sigma;
        ok &= z.abs() <= 4.0;
        detail.push(format!("n={size} z={z:+.2}"));
    }
    check(ok, detail.join(" "))
}

fn structural_oracle() -> Outcome {
    let mut keys = SplitMix64::new(SEED);
    let sample: Vec<u64> = (0..100).map(|_| keys.next_u64()).collect();
    let mut mismatches = 0u64;
    for algo in Algorithm::CONSISTENT {
        for &key in &sample {
            let active = reconstruct_active_indices(algo, key, 1000).map_err(|e| e.to_string())?;
            for size in 1..=1000 {
                if active.max_below(size) != Some(algo.bucket(key, n(size)).get()) {
                    mismatches += 1;
                }
            }
        }
    }
    let draws = 100_000u64;
    let total: usize = (0..draws)
        .map(|i| active_indices_from_scores(experiment_key(SEED, i), n(16)).map(|a| a.len()))
        .sum::<Result<usize, _>>()
        .map_err(|e| e.to_string())?;
    let mean = total as f64 / draws as f64;
    let (harmonic, _) = theory_jump_hash(16);
    check(
        mismatches == 0 && (mean - harmonic).abs() <= 0.02,
        format!("{mismatches} pointwise mismatches; E|A| at n=16 {mean:.4} vs {harmonic:.4}"),
    )
}

fn jump_hash_theory() -> Outcome {
    let ns = [4, 64, 4096].map(n);
    let summaries = run_consumption_experiment(Algorithm::JumpHash, &ns, 10_000_000, SEED)
        .map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut detail = Vec::new();
    for s in &summaries {
        ok &= s.mean_error() <= 0.02 && s.variance_error() <= 0.02;
        detail.push(format!("n={} mean err {:.4} var err {:.4}", s.n, s.mean_error(), s.variance_error()));
    }
    check(ok, detail.join("; "))
}

fn determinism() -> Outcome {
    let records = parse_golden(GOLDEN).map_err(|e| e.to_string())?;
    let covered = Algorithm::ALL.iter().all(|a| records.iter().any(|r| r.algo == *a));
    let first = verify_golden(&records);
    let second = verify_golden(&records);
    let bytes_equal = format_golden(&builtin_matrix()) == GOLDEN;
    check(
        records.len() >= 20 && covered && first.is_empty() && second.is_empty() && bytes_equal,
        format!(
            "{} records, {} + {} mismatches, writer reproduces file: {bytes_equal}",
            records.len(),
            first.len(),
            second.len()
        ),
    )
}

fn mean_invocations(algo: Algorithm, size: u32, keys: u64) -> f64 {
    let total: u64 = (0..keys)
        .map(|i| algo.bucket_counted(experiment_key(SEED, i), n(size)).1)
        .sum();
    total as f64 / keys as f64
}

fn ns_per_op(algo: Algorithm, size: u32, keys: u64) -> f64 {
    let bucket_count = n(size);
    let start = Instant::now();
    let mut acc = 0u32;
    for i in 0..keys {
        acc ^= algo.bucket(black_box(experiment_key(SEED, i)), bucket_count).get();
    }
    black_box(acc);
    start.elapsed().as_nanos() as f64 / keys as f64
}

fn performance() -> Outcome {
    let keys = 200_000;
    let mut packed_max: f64 = 0.0;
    let mut jump = Vec::new();
    for i in 0..=20 {
        for size in [1u32 << i, (1 << i) + 1] {
            packed_max = packed_max.max(mean_invocations(Algorithm::JumpBackHashPacked, size, keys));
        }
        jump.push(mean_invocations(Algorithm::JumpHash, 1 << i, keys));
    }
    let jump_million = mean_invocations(Algorithm::JumpHash, 1_000_000, keys);
    let (harmonic, _) = theory_jump_hash(1_000_000);
    // growth per octave should approach ln 2
    let slope = (jump[20] - jump[10]) / 10.0;
    let bounded = packed_max < 5.0 / 3.0 + 0.01;
    let logarithmic = (jump_million - harmonic).abs() <= 0.1 && (slope - std::f64::consts::LN_2).abs() < 0.02;

    let mut timing = Vec::new();
    let mut faster = true;
    for size in [1024u32, 1025, 1 << 16, 1_000_000] {
        let packed = ns_per_op(Algorithm::JumpBackHashPacked, size, 1_000_000);
        let jump = ns_per_op(Algorithm::JumpHash, size, 1_000_000);
        faster &= packed < jump;
        timing.push(format!("n={size} {packed:.1}/{jump:.1}ns"));
    }
    check(
        bounded && logarithmic,
        format!(
            "packed max mean {packed_max:.4}; jumphash n=1e6 {jump_million:.3} (theory {harmonic:.3}), \
             {slope:.4}/octave; wall packed/jumphash {} [{}]",
            timing.join(" "),
            if faster { "packed faster" } else { "noisy, report only" }
        ),
    )
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, outcome: Outcome| {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{id:>2}] {name}: {detail}");
    };

    report(1, "n-sequence fidelity", n_sequence());
    let runs = consumption_runs();
    match &runs {
        Ok(runs) => {
            report(2, "consumption theory match", consumption_match(runs));
            report(3, "consumption bounds", consumption_bounds(runs));
        }
        Err(e) => {
            report(2, "consumption theory match", Err(e.clone()));
            report(3, "consumption bounds", Err(e.clone()));
        }
    }
    report(4, "monotonicity", monotonicity());
    report(5, "uniformity small n", uniformity_small());
    report(6, "uniformity large n", uniformity_large());
    report(7, "reassignment minimality", reassignment());
    report(8, "structural oracle", structural_oracle());
    report(9, "jumphash theory", jump_hash_theory());
    report(10, "determinism", determinism());
    report(11, "performance property", performance());

    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
