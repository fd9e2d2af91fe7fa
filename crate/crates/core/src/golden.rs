//! Golden vectors: `algo,key_hex,n,bucket,invocations` records pinning the
//! exact output and generator consumption of every algorithm.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::hashers::{Algorithm, BucketCount};

pub const GOLDEN_KEYS: [u64; 6] = [0x0, 0x1, 0x7, 0x2A, 0x0123_4567_89AB_CDEF, u64::MAX];

pub const GOLDEN_NS: [u32; 12] = [
    1,
    2,
    3,
    5,
    10,
    100,
    1000,
    1024,
    1025,
    65536,
    1_000_000,
    i32::MAX as u32,
];

pub const GOLDEN_HEADER: &str = "# algo,key_hex,n,bucket,invocations";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenRecord {
    pub algo: Algorithm,
    pub key: u64,
    pub n: BucketCount,
    pub bucket: u32,
    pub invocations: u64,
}

impl GoldenRecord {
    pub fn compute(algo: Algorithm, key: u64, n: BucketCount) -> Self {
        let (bucket, invocations) = algo.bucket_counted(key, n);
        Self {
            algo,
            key,
            n,
            bucket: bucket.get(),
            invocations,
        }
    }

    /// Recomputes this record from its inputs.
    pub fn recompute(&self) -> Self {
        Self::compute(self.algo, self.key, self.n)
    }

    pub fn parse(line: &str, line_no: usize) -> Result<Self> {
        let err = |reason: String| Error::GoldenParse {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.trim().split(',').map(str::trim).collect();
        let [algo, key, n, bucket, invocations] = fields[..] else {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        };
        let key = key
            .strip_prefix("0x")
            .or_else(|| key.strip_prefix("0X"))
            .ok_or_else(|| err(format!("key `{key}` is not 0x-prefixed")))
            .and_then(|hex| u64::from_str_radix(hex, 16).map_err(|e| err(format!("key: {e}"))))?;
        let n: u64 = n.parse().map_err(|e| err(format!("n: {e}")))?;
        Ok(Self {
            algo: algo.parse().map_err(|e: Error| err(e.to_string()))?,
            key,
            n: BucketCount::try_from(n).map_err(|e| err(e.to_string()))?,
            bucket: bucket.parse().map_err(|e| err(format!("bucket: {e}")))?,
            invocations: invocations.parse().map_err(|e| err(format!("invocations: {e}")))?,
        })
    }
}

impl fmt::Display for GoldenRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{:#018x},{},{},{}",
            self.algo, self.key, self.n, self.bucket, self.invocations
        )
    }
}

/// Every algorithm against every built-in key and bucket count.
pub fn builtin_matrix() -> Vec<GoldenRecord> {
    let mut records = Vec::with_capacity(Algorithm::ALL.len() * GOLDEN_KEYS.len() * GOLDEN_NS.len());
    for algo in Algorithm::ALL {
        for key in GOLDEN_KEYS {
            for n in GOLDEN_NS {
                let n = BucketCount::new(n).expect("built-in counts are valid");
                records.push(GoldenRecord::compute(algo, key, n));
            }
        }
    }
    records
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| GoldenRecord::parse(l, i + 1))
        .collect()
}

pub fn format_golden(records: &[GoldenRecord]) -> String {
    let mut out = String::from(GOLDEN_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// A stored record and what the current build computes for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub expected: GoldenRecord,
    pub actual: GoldenRecord,
}

pub fn verify_golden(records: &[GoldenRecord]) -> Vec<Mismatch> {
    records
        .iter()
        .filter_map(|&expected| {
            let actual = expected.recompute();
            (actual != expected).then_some(Mismatch { expected, actual })
        })
        .collect()
}
