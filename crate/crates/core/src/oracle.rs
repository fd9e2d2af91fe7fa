//! Brute-force reference semantics.
//!
//! The slow definitions every fast algorithm must agree with: the argmin over
//! one score per bucket, the active indices of that score sequence, and the
//! reconstruction of an algorithm's active indices from its outputs.

use crate::error::{Error, Result};
use crate::hashers::{Algorithm, BucketCount, BucketIndex, Key};
use crate::prg::{RandomSource, SplitMix64};

/// Largest `n` the score-based oracle accepts.
pub const SCORE_LIMIT: u32 = 1 << 16;

/// Largest probe range for [`reconstruct_active_indices`].
pub const PROBE_LIMIT: u32 = 10_000;

/// One 64-bit score per bucket, drawn in ascending bucket order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreSequence {
    scores: Vec<u64>,
}

impl ScoreSequence {
    pub fn generate(key: Key, n: BucketCount) -> Result<Self> {
        if n.get() > SCORE_LIMIT {
            return Err(Error::OracleLimit {
                what: "n",
                value: n.get().into(),
                limit: SCORE_LIMIT.into(),
            });
        }
        let mut rng = SplitMix64::new(key);
        let scores = (0..n.get()).map(|_| rng.next_u64()).collect();
        Ok(Self { scores })
    }

    pub fn scores(&self) -> &[u64] {
        &self.scores
    }
}

/// Strictly increasing bucket indices, always starting with 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveIndexSet {
    indices: Vec<u32>,
}

impl ActiveIndexSet {
    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Largest member below `n`, i.e. the bucket these indices assign.
    pub fn max_below(&self, n: u32) -> Option<u32> {
        let end = self.indices.partition_point(|&i| i < n);
        end.checked_sub(1).map(|i| self.indices[i])
    }
}

/// Index of the smallest score, ties going to the lowest index.
pub fn argmin_oracle(key: Key, n: BucketCount) -> Result<BucketIndex> {
    let seq = ScoreSequence::generate(key, n)?;
    // min_by_key keeps the first of equal minima
    let best = seq
        .scores
        .iter()
        .enumerate()
        .min_by_key(|&(_, &s)| s)
        .map_or(0, |(i, _)| i);
    Ok(BucketIndex::from_raw(best as u32))
}

/// Prefix minima of the score sequence: index 0 plus every index whose score
/// beats all earlier scores.
pub fn active_indices_from_scores(key: Key, n: BucketCount) -> Result<ActiveIndexSet> {
    let seq = ScoreSequence::generate(key, n)?;
    let mut indices = vec![0];
    let mut best = seq.scores[0];
    for (i, &s) in seq.scores.iter().enumerate().skip(1) {
        if s < best {
            best = s;
            indices.push(i as u32);
        }
    }
    Ok(ActiveIndexSet { indices })
}

/// Recovers the active indices a consistent algorithm uses for `key` by
/// recording every `n` with `f(key, n + 1) == n`, for `0 < n < n_probe`.
pub fn reconstruct_active_indices(algo: Algorithm, key: Key, n_probe: u32) -> Result<ActiveIndexSet> {
    if !algo.is_consistent() {
        return Err(Error::NotConsistent {
            algorithm: algo.name(),
        });
    }
    if n_probe > PROBE_LIMIT {
        return Err(Error::OracleLimit {
            what: "n_probe",
            value: n_probe.into(),
            limit: PROBE_LIMIT.into(),
        });
    }
    let mut indices = vec![0];
    for n in 1..n_probe {
        if algo.bucket(key, BucketCount::new(n + 1)?).get() == n {
            indices.push(n);
        }
    }
    Ok(ActiveIndexSet { indices })
}
