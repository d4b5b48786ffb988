use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("posets are limited to {max} elements, got {n}")]
    TooManyElements { n: usize, max: usize },
    #[error("cover list contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("cover ({lo}, {hi}) is implied by transitivity or repeated")]
    RedundantCover { lo: usize, hi: usize },
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("operation limited to {limit} elements, poset has {n}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("count overflowed 128 bits")]
    Overflow,
    #[error("invalid numbering: {0}")]
    InvalidNumbering(String),

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("invalid strict partition {0:?}: parts must be positive and strictly decreasing")]
    NotStrict(Vec<usize>),
    #[error("parent list does not describe a rooted tree: {0}")]
    NotATree(String),
    #[error("unknown minuscule poset {0:?}")]
    UnknownName(String),

    #[error("bubble {0} is not present in the snapshot")]
    UnknownBubble(String),
    #[error("malformed bi-numbering: {0}")]
    MalformedBiNumbering(String),

    #[error("set is not a filter")]
    NotAFilter,
    #[error("set is not an ideal")]
    NotAnIdeal,
    #[error("assignment is not a linear extension")]
    NotAnExtension,
    #[error("invalid challenge: {0}")]
    InvalidChallenge(String),

    #[error("poset has no unique maximal element")]
    NoUniqueMax,
    #[error("poset is not d-complete")]
    NotDComplete,
    #[error("simultaneous engine invariant violated: {0}")]
    EngineInvariant(String),
    #[error("census implication violated for {id}: {detail}")]
    ImplicationViolated { id: String, detail: String },

    #[error("malformed input: {0}")]
    Parse(String),
}
