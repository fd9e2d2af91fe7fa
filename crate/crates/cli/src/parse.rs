//! Argument value parsers shared by the subcommands.

use jbhash::stats::geometric_n_sequence;
use jbhash::{Algorithm, BucketCount};

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_u64(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("`{s}` is not a 64-bit decimal or 0x-hex value: {e}"))
}

pub fn parse_bucket_count(s: &str) -> Result<BucketCount, String> {
    let v = parse_u64(s)?;
    BucketCount::try_from(v).map_err(|e| e.to_string())
}

pub fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: jbhash::Error| e.to_string())
}

pub fn parse_algorithm_list(s: &str) -> Result<Vec<Algorithm>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_algorithm).collect()
}

/// Comma separated bucket counts, each entry either `n` or an inclusive
/// range `a..b`.
pub fn parse_n_list(s: &str) -> Result<Vec<BucketCount>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse_bucket_count(a)?, parse_bucket_count(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend((a.get()..=b.get()).map(|v| BucketCount::new(v).expect("inside range")));
            }
            None => out.push(parse_bucket_count(part)?),
        }
    }
    if out.is_empty() {
        return Err("no bucket counts given".into());
    }
    Ok(out)
}

/// `list:<n,...>` or `geom:<n0>:<factor>`.
pub fn parse_n_spec(s: &str) -> Result<Vec<BucketCount>, String> {
    if let Some(list) = s.strip_prefix("list:") {
        return parse_n_list(list);
    }
    if let Some(geom) = s.strip_prefix("geom:") {
        let (n0, factor) = geom
            .split_once(':')
            .ok_or_else(|| format!("`{s}`: expected geom:<n0>:<factor>"))?;
        let n0 = parse_bucket_count(n0)?;
        let factor: f64 = factor.parse().map_err(|e| format!("factor `{factor}`: {e}"))?;
        let seq = geometric_n_sequence(n0.get().into(), factor).map_err(|e| e.to_string())?;
        return Ok(seq
            .into_iter()
            .map(|v| BucketCount::try_from(v).expect("bounded by n0"))
            .collect());
    }
    Err(format!("`{s}`: n-spec must start with list: or geom:"))
}

/// Powers of two, their successors and the quarter points in between, up
/// to one million.
pub fn default_bench_n_list() -> Vec<BucketCount> {
    const LIMIT: u32 = 1_000_000;
    let mut v = Vec::new();
    for i in 0..20 {
        let base = 1u32 << i;
        v.push(base);
        v.push(base + 1);
        for j in 1..4 {
            v.push(base + (base * j) / 4);
        }
    }
    v.push(LIMIT);
    v.retain(|&n| n <= LIMIT);
    v.sort_unstable();
    v.dedup();
    v.into_iter().map(|n| BucketCount::new(n).expect("within limit")).collect()
}
