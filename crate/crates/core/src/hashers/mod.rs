//! Key to bucket mapping algorithms behind a single interface.
//!
//! Every algorithm is a pure function of `(key, n)`. The seeded generator is
//! created per call, so evaluations are safe to run concurrently and can be
//! replayed exactly.
//!
//! ```
//! use jbhash::{Algorithm, BucketCount};
//!
//! let n = BucketCount::new(1000).unwrap();
//! let b = Algorithm::JumpBackHashPacked.bucket(0x0123_4567_89AB_CDEF, n);
//! assert!(b.get() < 1000);
//! ```

mod baseline;
mod jump;
mod jump_back;
mod trace;

use std::fmt;
use std::str::FromStr;

pub use trace::{EvaluationTrace, Tracer};

use crate::error::{Error, Result};
use crate::prg::{CountingGenerator, RandomSource, SplitMix64};

/// Number of power-of-two intervals; every supported `n` is at most `2^32`.
pub const INTERVAL_COUNT: u32 = 32;

/// Starting point of the descending active-index walk.
pub const N_MAX: u64 = 1 << INTERVAL_COUNT;

/// A 64-bit key, assumed to already be the output of a good hash function.
pub type Key = u64;

/// Number of buckets, `1..=2^31 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BucketCount(u32);

impl BucketCount {
    pub const MIN: Self = Self(1);
    pub const MAX: Self = Self(i32::MAX as u32);

    pub fn new(n: u32) -> Result<Self> {
        Self::try_from(u64::from(n))
    }

    #[inline(always)]
    pub const fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u64> for BucketCount {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        if (1..=u64::from(Self::MAX.0)).contains(&n) {
            Ok(Self(n as u32))
        } else {
            Err(Error::BucketCount(n))
        }
    }
}

impl fmt::Display for BucketCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A bucket in `[0, n)` for the count it was computed against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BucketIndex(u32);

impl BucketIndex {
    pub(crate) const fn from_raw(b: u32) -> Self {
        Self(b)
    }

    #[inline(always)]
    pub const fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for BucketIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How the improved backwards walk samples the next candidate inside an
/// interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalOption {
    /// Option 1: uniform below the current candidate.
    Recursive,
    /// Option 2: uniform over the enclosing power-of-two range.
    EnclosingPowerOfTwo,
}

impl TryFrom<u8> for IntervalOption {
    type Error = Error;

    fn try_from(option: u8) -> Result<Self> {
        match option {
            1 => Ok(Self::Recursive),
            2 => Ok(Self::EnclosingPowerOfTwo),
            other => Err(Error::IntervalOption(other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Modulo,
    Random,
    Icws,
    JumpHash,
    JumpingBackwards,
    JumpingBackwardsImprovedOpt1,
    JumpingBackwardsImprovedOpt2,
    JumpBackHash,
    JumpBackHashPacked,
}

impl Algorithm {
    pub const ALL: [Self; 9] = [
        Self::Modulo,
        Self::Random,
        Self::Icws,
        Self::JumpHash,
        Self::JumpingBackwards,
        Self::JumpingBackwardsImprovedOpt1,
        Self::JumpingBackwardsImprovedOpt2,
        Self::JumpBackHash,
        Self::JumpBackHashPacked,
    ];

    /// Algorithms that satisfy monotonicity.
    pub const CONSISTENT: [Self; 7] = [
        Self::Icws,
        Self::JumpHash,
        Self::JumpingBackwards,
        Self::JumpingBackwardsImprovedOpt1,
        Self::JumpingBackwardsImprovedOpt2,
        Self::JumpBackHash,
        Self::JumpBackHashPacked,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Self::Modulo => "modulo",
            Self::Random => "random",
            Self::Icws => "icws",
            Self::JumpHash => "jumphash",
            Self::JumpingBackwards => "jumping-backwards",
            Self::JumpingBackwardsImprovedOpt1 => "jumping-backwards-improved-opt1",
            Self::JumpingBackwardsImprovedOpt2 => "jumping-backwards-improved-opt2",
            Self::JumpBackHash => "jumpbackhash",
            Self::JumpBackHashPacked => "jumpbackhash-packed",
        }
    }

    pub const fn is_consistent(self) -> bool {
        !matches!(self, Self::Modulo | Self::Random)
    }

    #[inline]
    pub fn bucket(self, key: Key, n: BucketCount) -> BucketIndex {
        let mut rng = SplitMix64::new(key);
        BucketIndex(self.run(key, n, &mut rng, &mut ()))
    }

    /// Bucket plus the number of generator words consumed.
    #[inline]
    pub fn bucket_counted(self, key: Key, n: BucketCount) -> (BucketIndex, u64) {
        let mut rng = CountingGenerator::seeded(key);
        let b = self.run(key, n, &mut rng, &mut ());
        (BucketIndex(b), rng.invocations())
    }

    pub fn bucket_traced(self, key: Key, n: BucketCount) -> (BucketIndex, EvaluationTrace) {
        let mut rng = CountingGenerator::seeded(key);
        let mut trace = EvaluationTrace::default();
        let b = self.run(key, n, &mut rng, &mut trace);
        trace.invocations = rng.invocations();
        if matches!(self, Self::JumpBackHash | Self::JumpBackHashPacked) {
            assert!(
                trace.m_list.len() <= 2,
                "{self} visited {} intervals for key {key:#018x}, n = {n}",
                trace.m_list.len()
            );
        }
        (BucketIndex(b), trace)
    }

    /// Runs the algorithm against an arbitrary word source.
    #[inline]
    pub fn run<R: RandomSource, T: Tracer>(
        self,
        key: Key,
        n: BucketCount,
        rng: &mut R,
        trace: &mut T,
    ) -> u32 {
        match self {
            Self::Modulo => baseline::modulo(key, n),
            Self::Random => baseline::random(rng, n),
            Self::Icws => baseline::icws(rng, n, trace),
            Self::JumpHash => jump::jump_hash(rng, n, trace),
            Self::JumpingBackwards => jump::jumping_backwards(rng, n, trace),
            Self::JumpingBackwardsImprovedOpt1 => {
                jump::jumping_backwards_improved(rng, n, IntervalOption::Recursive, trace)
            }
            Self::JumpingBackwardsImprovedOpt2 => {
                jump::jumping_backwards_improved(rng, n, IntervalOption::EnclosingPowerOfTwo, trace)
            }
            Self::JumpBackHash => jump_back::jump_back_hash(rng, n, trace),
            Self::JumpBackHashPacked => jump_back::jump_back_hash_packed(rng, n, trace),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts the canonical names plus underscore and short aliases.
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        let algo = match normalized.as_str() {
            "modulo" | "mod" => Self::Modulo,
            "random" | "lemire" => Self::Random,
            "icws" => Self::Icws,
            "jumphash" | "jump-hash" => Self::JumpHash,
            "jumping-backwards" => Self::JumpingBackwards,
            "jumping-backwards-improved-opt1" | "jumping-backwards-improved-1" => {
                Self::JumpingBackwardsImprovedOpt1
            }
            "jumping-backwards-improved-opt2" | "jumping-backwards-improved-2" => {
                Self::JumpingBackwardsImprovedOpt2
            }
            "jumpbackhash" | "jump-back-hash" => Self::JumpBackHash,
            "jumpbackhash-packed" | "jump-back-hash-packed" | "jumpbackhash*" => {
                Self::JumpBackHashPacked
            }
            _ => return Err(Error::UnknownAlgorithm(s.to_owned())),
        };
        Ok(algo)
    }
}

/// Algorithm selection together with the fixed interval parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HasherConfig {
    pub algorithm: Algorithm,
}

impl HasherConfig {
    pub const INTERVAL_COUNT: u32 = INTERVAL_COUNT;
    pub const N_MAX: u64 = N_MAX;

    pub const fn new(algorithm: Algorithm) -> Self {
        Self { algorithm }
    }
}

/// Evaluates with a full trace; the bucket equals the untraced result.
pub fn evaluate_traced(cfg: HasherConfig, key: Key, n: BucketCount) -> (BucketIndex, EvaluationTrace) {
    cfg.algorithm.bucket_traced(key, n)
}

pub fn modulo_hash(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::Modulo.bucket(key, n)
}

/// `floor(v * n / 2^64)` for one generator word `v`. Uniform, not monotone.
pub fn random_hash(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::Random.bucket(key, n)
}

pub fn icws_hash(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::Icws.bucket(key, n)
}

pub fn jump_hash(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::JumpHash.bucket(key, n)
}

pub fn jumping_backwards(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::JumpingBackwards.bucket(key, n)
}

/// `option` is 1 (recursive candidates) or 2 (enclosing power of two).
pub fn jumping_backwards_improved(key: Key, n: BucketCount, option: u8) -> Result<BucketIndex> {
    let algo = match IntervalOption::try_from(option)? {
        IntervalOption::Recursive => Algorithm::JumpingBackwardsImprovedOpt1,
        IntervalOption::EnclosingPowerOfTwo => Algorithm::JumpingBackwardsImprovedOpt2,
    };
    Ok(algo.bucket(key, n))
}

/// JumpBackHash with one generator word per 32-bit random value.
///
/// ```
/// use jbhash::{jump_back_hash, BucketCount};
///
/// let key = 0x0123_4567_89AB_CDEF;
/// let mut previous = 0;
/// for n in 1..1000 {
///     let b = jump_back_hash(key, BucketCount::new(n).unwrap()).get();
///     assert!(b == previous || b == n - 1);
///     previous = b;
/// }
/// ```
#[inline]
pub fn jump_back_hash(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::JumpBackHash.bucket(key, n)
}

/// JumpBackHash splitting every generator word into two 32-bit values.
#[inline]
pub fn jump_back_hash_packed(key: Key, n: BucketCount) -> BucketIndex {
    Algorithm::JumpBackHashPacked.bucket(key, n)
}
