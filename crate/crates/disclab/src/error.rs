use thiserror::Error;

/// Crate-wide error type. Variants are grouped by what went wrong rather than
/// by which module raised them; `is_budget` picks out the resource-limit class
/// so callers (in particular the CLI) can distinguish "you asked for too much"
/// from "the input is bad".
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    /// Parameter combinations ruled out by a generator or constructor
    /// (divisibility, monotonicity, range guards).
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    /// An exact computation was asked for beyond its configured cap.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// A rejection sampler ran out of attempts.
    #[error("sampling budget exhausted: {0}")]
    SamplingExhausted(String),

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("invalid layering: {0}")]
    InvalidLayering(String),

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    /// The requested family has no members (no Hamilton cycle, no perfect
    /// matching, ...), so a maximum over it does not exist.
    #[error("empty family: {0}")]
    EmptyFamily(String),

    /// Structural precondition on auxiliary input (forced edge set is not a
    /// path forest, sides are not a bipartition, ...).
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("degree condition violated: {0}")]
    DegreeCondition(String),

    #[error("invalid clique cover: {0}")]
    InvalidCover(String),

    /// A bound that is mathematically guaranteed under the operation's
    /// hypotheses failed to hold. This is always a bug report in disguise:
    /// the message carries enough context to reproduce.
    #[error("theory violation: {0}")]
    TheoryViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors meaning "raise a budget/cap", not "fix the input".
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SizeLimit(_) | Error::SamplingExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
