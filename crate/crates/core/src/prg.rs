//! Seeded pseudorandom generation.
//!
//! Everything in this crate draws randomness through [`RandomSource`], a
//! stream of raw 64-bit words. The derived samplers are provided methods so
//! that wrapping a source in a [`CountingGenerator`] counts every word a
//! sampler touches, which is the unit used by the consumption analysis.

use std::num::NonZeroU64;

use crate::error::{Error, Result};

/// Golden-ratio increment of SplitMix64.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Finalizer applied to the advanced state.
#[inline(always)]
pub const fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps a raw word onto `[0, 1)` using its 53 high bits.
#[inline(always)]
pub fn unit_from_bits(v: u64) -> f64 {
    (v >> 11) as f64 * TWO_POW_NEG_53
}

/// A stream of uniformly distributed 64-bit words.
pub trait RandomSource {
    fn next_u64(&mut self) -> u64;

    /// Low 32 bits of one word; the high half is discarded.
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        self.next_u64() as u32
    }

    /// Uniform on `[0, 1)`, one word.
    #[inline(always)]
    fn next_unit(&mut self) -> f64 {
        unit_from_bits(self.next_u64())
    }

    /// Standard exponential by inversion, one word.
    #[inline]
    fn next_exponential(&mut self) -> f64 {
        -(1.0 - self.next_unit()).ln()
    }

    /// Unbiased uniform integer on `[0, bound)`.
    ///
    /// `bound == 1` returns 0 without drawing. Powers of two mask the low
    /// bits of a single word. Anything else takes the high word of the
    /// 128-bit product and rejects the biased low fraction, so more than one
    /// word is drawn with probability below `bound / 2^64`.
    #[inline]
    fn next_bounded(&mut self, bound: u64) -> Result<u64> {
        NonZeroU64::new(bound)
            .map(|bound| self.next_below(bound))
            .ok_or(Error::EmptyRange)
    }

    /// Infallible form of [`next_bounded`](Self::next_bounded).
    #[inline]
    fn next_below(&mut self, bound: NonZeroU64) -> u64 {
        let bound = bound.get();
        if bound == 1 {
            0
        } else if bound.is_power_of_two() {
            self.next_u64() & (bound - 1)
        } else {
            self.bounded_multiply_high(bound)
        }
    }

    #[doc(hidden)]
    #[inline]
    fn bounded_multiply_high(&mut self, bound: u64) -> u64 {
        let mut product = u128::from(self.next_u64()) * u128::from(bound);
        if (product as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (product as u64) < threshold {
                product = u128::from(self.next_u64()) * u128::from(bound);
            }
        }
        (product >> 64) as u64
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    #[inline(always)]
    fn next_u64(&mut self) -> u64 {
        (**self).next_u64()
    }
}

/// SplitMix64 generator state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Seeds the generator with `seed` verbatim.
    #[inline(always)]
    pub const fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub const fn state(&self) -> u64 {
        self.state
    }

    /// Pure state transition: returns the successor state and its output.
    #[inline(always)]
    pub const fn advance(self) -> (Self, u64) {
        let state = self.state.wrapping_add(GOLDEN_GAMMA);
        (Self { state }, mix64(state))
    }

    /// Output number `index` (zero-based) of the stream seeded with `seed`,
    /// without stepping through the earlier outputs.
    #[inline]
    pub const fn nth_output(seed: u64, index: u64) -> u64 {
        mix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
    }
}

impl RandomSource for SplitMix64 {
    #[inline(always)]
    fn next_u64(&mut self) -> u64 {
        let (next, out) = self.advance();
        *self = next;
        out
    }
}

/// Wraps a source and counts the raw words drawn from it.
#[derive(Clone, Debug)]
pub struct CountingGenerator<R = SplitMix64> {
    inner: R,
    invocations: u64,
}

impl CountingGenerator<SplitMix64> {
    pub fn seeded(seed: u64) -> Self {
        Self::new(SplitMix64::new(seed))
    }
}

impl<R: RandomSource> CountingGenerator<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            invocations: 0,
        }
    }

    /// Number of 64-bit words drawn since construction.
    pub fn invocations(&self) -> u64 {
        self.invocations
    }

    pub fn into_inner(self) -> R {
        self.inner
    }
}

impl<R: RandomSource> RandomSource for CountingGenerator<R> {
    #[inline(always)]
    fn next_u64(&mut self) -> u64 {
        self.invocations += 1;
        self.inner.next_u64()
    }
}
