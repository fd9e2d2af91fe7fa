//! Reference assignments: the plain modulo and Lemire-scaled pseudorandom
//! mappings (uniform, not monotone) and the ICWS specialization (consistent,
//! floating point).

use super::{BucketCount, Tracer};
use crate::prg::RandomSource;

#[inline]
pub(crate) fn modulo(key: u64, n: BucketCount) -> u32 {
    (key % u64::from(n.get())) as u32
}

#[inline]
pub(crate) fn random<R: RandomSource>(rng: &mut R, n: BucketCount) -> u32 {
    ((u128::from(rng.next_u64()) * u128::from(n.get())) >> 64) as u32
}

/// Consistent weighted sampling with unit weights: the reported bucket is
/// the largest active index below `n` of a scale-invariant active-index
/// process.
pub(crate) fn icws<R: RandomSource, T: Tracer>(rng: &mut R, n: BucketCount, trace: &mut T) -> u32 {
    let u = rng.next_unit();
    let g = rng.next_exponential() + rng.next_exponential();
    trace.unit(u);
    trace.gamma(g);
    let last = n.get() - 1;
    let t = (f64::from(n.get()).ln() / g + u).floor();
    let y = (g * (t - u)).exp().floor();
    // also catches NaN from g == 0
    if y < f64::from(last) {
        y as u32
    } else {
        last
    }
}
