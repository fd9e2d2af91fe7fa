//! Consistent hashing with JumpBackHash.
//!
//! JumpBackHash maps a 64-bit key to one of `n` buckets so that every bucket
//! is equally likely and growing `n` by one only ever moves keys to the new
//! bucket. It needs no floating point and consumes a bounded expected number
//! of pseudorandom words, independent of `n`.
//!
//! The crate also carries the algorithms it is compared against, a
//! brute-force reference ([`oracle`]), the closed-form consumption theory and
//! the statistical experiment runners ([`stats`]), and golden vectors
//! ([`golden`]).

pub mod error;
pub mod golden;
pub mod hashers;
pub mod oracle;
pub mod prg;
pub mod stats;

pub use error::{Error, Result};
pub use hashers::{
    evaluate_traced, icws_hash, jump_back_hash, jump_back_hash_packed, jump_hash,
    jumping_backwards, jumping_backwards_improved, modulo_hash, random_hash, Algorithm,
    BucketCount, BucketIndex, EvaluationTrace, HasherConfig, IntervalOption, Key,
};
pub use prg::{CountingGenerator, RandomSource, SplitMix64};
