use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected {expected} signs for n={n}, r={r}, got {got}")]
    LengthMismatch {
        n: usize,
        r: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid shape n={n}, r={r}: {reason}")]
    InvalidShape {
        n: usize,
        r: usize,
        reason: &'static str,
    },
    #[error("invalid sign character {ch:?} at position {position}")]
    InvalidSignChar { position: usize, ch: char },
    #[error("element index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("tuple has length {got}, expected rank {r}")]
    TupleLength { got: usize, r: usize },
    #[error("relabeling is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("dual of a rank-{r} chirotope on {n} elements has rank 0")]
    DualRankZero { n: usize, r: usize },
    #[error("chirotope is not acyclic")]
    NotAcyclic,
    #[error("chirotope is not a matroid polytope")]
    NotMatroidPolytope,
    #[error("chirotope is identically zero")]
    IdenticallyZero,
    #[error("node limit of {limit} exceeded")]
    NodeLimitExceeded { limit: u64 },
    #[error("frame is inconsistent with the chirotope: {0}")]
    InconsistentFrame(String),
    #[error("realization has {rows}x{cols} entries, expected {r}x{n}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        r: usize,
        n: usize,
    },
    #[error("variable x{0} is not assigned")]
    Unassigned(u32),
    #[error("denominator sign must be + or -")]
    ZeroDenominatorSign,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal soundness violation: {0}")]
    Soundness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
