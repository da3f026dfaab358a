//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("conductor {0} exceeds the configured bound {1}")]
    ConductorOverflow(u32, u32),
    #[error("unknown group specification `{0}`")]
    BadGroupSpec(String),
    #[error("group closure exceeded {0} elements; construction bug for family {1}")]
    ClosureBug(usize, String),
    #[error("group order {0} exceeds the configured cap {1}")]
    OrderCap(usize, usize),
    #[error("group does not contain -I; unsupported")]
    NoMinusOne,
    #[error("character table verification failed: {0}")]
    BadCharacterTable(String),
    #[error("class function is not a character: inner product {0} at vertex {1}")]
    NotACharacter(String, usize),
    #[error("not a McKay graph: {0}")]
    NotMcKay(String),
    #[error("graph is not an affine ADE diagram: {0}")]
    NotAffine(String),
    #[error("invalid height function: {0}")]
    BadHeight(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("vertex {0} is not a sink")]
    NotASink(usize),
    #[error("vertex {0} is not a source")]
    NotASource(usize),
    #[error("window [{0}, {1}] too small: level {2} needed")]
    WindowTooSmall(i64, i64, i64),
    #[error("vertex ({0}, {1}) violates the parity constraint")]
    ParityViolation(usize, i64),
    #[error("twist amount {0} is odd")]
    OddTwist(i64),
    #[error("root is not a positive real root: {0}")]
    NotRealRoot(String),
    #[error("reflection word search exceeded {0} steps")]
    WordSearchBound(usize),
    #[error("vertex ({0}, {1}) lies below the height band")]
    BelowBand(usize, i64),
    #[error("zero representation has no indecomposability status")]
    ZeroRepresentation,
    #[error("class with rank 0 and degree 0 is not polarizable")]
    Unpolarizable,
    #[error("model requires an even cycle length, got {0}")]
    OddCycle(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal error: {0}")]
    Internal(String),
}
