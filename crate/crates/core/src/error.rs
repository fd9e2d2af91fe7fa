use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot sample from an empty range")]
    EmptyRange,

    #[error("bucket count {0} is outside 1..=2147483647")]
    BucketCount(u64),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid interval option {0}, expected 1 or 2")]
    IntervalOption(u8),

    #[error("{what} = {value} exceeds the oracle limit of {limit}")]
    OracleLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("{algorithm} is not a consistent hash")]
    NotConsistent { algorithm: &'static str },

    #[error("{0}")]
    Domain(String),

    #[error("golden file line {line}: {reason}")]
    GoldenParse { line: usize, reason: String },
}
