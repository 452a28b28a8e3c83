use thiserror::Error;

/// Errors raised by the combinatorial and geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tableau: {0}")]
    MalformedTableau(String),
    #[error("content has a gap: entry {missing} never appears but {max} does")]
    GappedContent { missing: u32, max: u32 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("tableau is not semistandard for the requested convention")]
    NotSemistandard,
    #[error(
        "array is not in variant order (top weakly increasing, bottom weakly decreasing on runs)"
    )]
    NotPaperOrdered,
    #[error("array is not in lexicographic order")]
    NotLexicographic,
    #[error("permutation is not the standardization of any array with the given contents")]
    MembershipError,
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed flag: {0}")]
    MalformedFlag(String),
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("flag is not stable under the operator")]
    NotStable,
    #[error("inconsistent Jordan types along the flag: {0}")]
    ShapeConflict(String),
    #[error("sampler reached a dead end at step {step}: {available} dimensions available, {needed} needed")]
    DeadEnd {
        step: usize,
        available: usize,
        needed: usize,
    },
    #[error("sampling exhausted after {attempts} attempts{}", target.as_ref().map(|t| format!(" (target {t})")).unwrap_or_default())]
    SamplingExhausted {
        attempts: usize,
        target: Option<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
