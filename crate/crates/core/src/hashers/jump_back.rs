//! JumpBackHash: the interval walk with all randomness folded into two
//! 32-bit words plus one shared candidate stream, so that at most two
//! intervals are ever visited and the expected cost is constant.

use super::{BucketCount, Tracer};
use crate::prg::RandomSource;

#[inline(always)]
fn floor_log2(x: u32) -> u32 {
    31 - x.leading_zeros()
}

/// Bits `0..m0` where `2^(m0-1) < n <= 2^m0`.
#[inline(always)]
fn interval_mask(n: u32) -> u32 {
    u32::MAX >> (n - 1).leading_zeros()
}

/// One 64-bit word per 32-bit value; the high halves are discarded.
pub(crate) fn jump_back_hash<R: RandomSource, T: Tracer>(
    rng: &mut R,
    n: BucketCount,
    trace: &mut T,
) -> u32 {
    let n = n.get();
    if n <= 1 {
        return 0;
    }
    let x = [rng.next_u32(), rng.next_u32()];
    let mut u = (x[0] ^ x[1]) & interval_mask(n);
    trace.words(x[0], x[1], u);
    while u != 0 {
        let m = floor_log2(u);
        let q = 1u32 << m;
        let parity = u.count_ones() & 1;
        let mut b = q | (x[parity as usize] & (q - 1));
        trace.interval(m, parity, b);
        loop {
            if b < n {
                return b;
            }
            // q <= 2^30, so 2q - 1 cannot overflow
            b = rng.next_u32() & ((q << 1) - 1);
            trace.z(b);
            if b < q {
                break;
            }
        }
        u ^= q;
    }
    0
}

/// Packed variant: one word supplies both initial values (low half, high
/// half) and every later word supplies two candidates.
pub(crate) fn jump_back_hash_packed<R: RandomSource, T: Tracer>(
    rng: &mut R,
    n: BucketCount,
    trace: &mut T,
) -> u32 {
    let n = n.get();
    if n <= 1 {
        return 0;
    }
    let v = rng.next_u64();
    let mut u = ((v ^ (v >> 32)) as u32) & interval_mask(n);
    trace.words(v as u32, (v >> 32) as u32, u);
    while u != 0 {
        let m = floor_log2(u);
        let q = 1u32 << m;
        let parity = u.count_ones() & 1;
        let mut b = q | ((v >> (parity << 5)) as u32 & (q - 1));
        trace.interval(m, parity, b);
        let mask = (q << 1) - 1;
        loop {
            if b < n {
                return b;
            }
            let w = rng.next_u64();
            b = w as u32 & mask;
            trace.z(b);
            if b < q {
                break;
            }
            if b < n {
                return b;
            }
            b = (w >> 32) as u32 & mask;
            trace.z(b);
            if b < q {
                break;
            }
        }
        u ^= q;
    }
    0
}
