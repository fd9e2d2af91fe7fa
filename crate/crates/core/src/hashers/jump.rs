//! Active indices generated in ascending order (JumpHash) and in descending
//! order from a fixed upper bound, directly and via the power-of-two
//! interval decomposition.

use std::num::NonZeroU64;

use super::{BucketCount, IntervalOption, Tracer, INTERVAL_COUNT, N_MAX};
use crate::prg::RandomSource;

/// Walks active indices upward with `a' = floor((a + 1) / u)` until one
/// reaches `n`; the previous one is the bucket. `u == 0` counts as an
/// infinite jump.
pub(crate) fn jump_hash<R: RandomSource, T: Tracer>(
    rng: &mut R,
    n: BucketCount,
    trace: &mut T,
) -> u32 {
    let limit = f64::from(n.get());
    let mut bucket = 0u64;
    trace.active_index(0);
    loop {
        let u = rng.next_unit();
        trace.unit(u);
        if u == 0.0 {
            break;
        }
        let next = ((bucket + 1) as f64 / u).floor();
        if next >= limit {
            break;
        }
        bucket = next as u64;
        trace.active_index(bucket);
    }
    bucket as u32
}

/// Walks active indices downward from `N_MAX`, each uniform below the last.
pub(crate) fn jumping_backwards<R: RandomSource, T: Tracer>(
    rng: &mut R,
    n: BucketCount,
    trace: &mut T,
) -> u32 {
    let n = u64::from(n.get());
    let mut bucket = N_MAX;
    loop {
        // bucket >= n >= 1 on every pass
        bucket = rng.next_below(NonZeroU64::new(bucket).unwrap_or(NonZeroU64::MIN));
        trace.active_index(bucket);
        if bucket < n {
            return bucket as u32;
        }
    }
}

/// Processes the intervals `[2^m, 2^(m+1))` from the top down, spending one
/// random bit per interval to decide whether it holds an active index.
pub(crate) fn jumping_backwards_improved<R: RandomSource, T: Tracer>(
    rng: &mut R,
    n: BucketCount,
    option: IntervalOption,
    trace: &mut T,
) -> u32 {
    let n = u64::from(n.get());
    for m in (0..INTERVAL_COUNT).rev() {
        let low = 1u64 << m;
        if rng.next_u64() & 1 == 0 {
            continue;
        }
        let mut bucket = low + rng.next_below(NonZeroU64::new(low).unwrap_or(NonZeroU64::MIN));
        trace.interval(m, 0, bucket as u32);
        trace.active_index(bucket);
        // option 2 candidates are not monotone; only new minima are active
        let mut lowest = bucket;
        loop {
            if bucket < n {
                return bucket as u32;
            }
            let bound = match option {
                IntervalOption::Recursive => bucket,
                IntervalOption::EnclosingPowerOfTwo => low << 1,
            };
            bucket = rng.next_below(NonZeroU64::new(bound).unwrap_or(NonZeroU64::MIN));
            trace.z(bucket as u32);
            if bucket < low {
                break;
            }
            if bucket < lowest {
                lowest = bucket;
                trace.active_index(bucket);
            }
        }
    }
    0
}
