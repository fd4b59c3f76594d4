use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system label `{0}`")]
    UnsupportedType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple reflection index {0} out of range")]
    BadIndex(usize),
    #[error("rank {rank} exceeds the limit {limit} for this operation")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("no involution decomposition found")]
    NotFound,
    #[error("not a root of the system: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("sequence is not a permutation of the positive roots")]
    NotAPermutation,
    #[error("word is not reduced")]
    NotReduced,
    #[error("word has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("state space too large: {0}")]
    TooLarge(String),
    #[error("roots are antipodal")]
    AntipodalPair,
    #[error("adapted ordering construction failed: {0}")]
    ConstructionFailed(String),
    #[error("no appendix fixture for {0}")]
    NoFixture(String),
    #[error("Carter matrix is singular")]
    SingularCarterMatrix,
    #[error("root vector for {0:?} has F or K letters in normal form")]
    ImpureRootVector(Vec<i64>),
    #[error("weight height {height} exceeds bound {bound}")]
    HeightBound { height: i64, bound: i64 },
    #[error("linear system for {0} has no solution")]
    InconsistentSystem(String),
    #[error("linear system for {0} has no unique solution")]
    NonUniqueSolution(String),
    #[error("relation support violates the ordering: {0}")]
    SupportViolation(String),
    #[error("relations missing for pair {0}")]
    IncompleteRelations(String),
    #[error("specialization is singular: {0}")]
    SpecializationSingular(String),
    #[error("dimension identity violated: {0}")]
    InvariantViolation(String),
    #[error("class `{0}` not recognised")]
    UnknownClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
