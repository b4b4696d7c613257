use crate::arena::ValidationReport;
use crate::weight::Overflow;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("invalid arena: {0}")]
    InvalidArena(ValidationReport),
    #[error("invalid automaton: {0}")]
    InvalidDfa(ValidationReport),
    #[error("unknown color {0:?}")]
    UnknownColor(String),
    #[error("arena color {0:?} is not in the automaton's alphabet")]
    ColorMismatch(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
    /// A fixed-point iteration ran past its proven bound. This indicates a
    /// bug, never a property of the input.
    #[error("{solver} did not stabilize within {bound} iterations")]
    IterationBound { solver: &'static str, bound: usize },
    #[error("goal set is empty")]
    EmptyGoal,
    #[error("no optimal successor at vertex {0}")]
    NoOptimalSuccessor(String),
    #[error("vertex {0} is not owned by the strategy's player")]
    NotOwned(String),
    #[error("strategy belongs to the wrong player")]
    PlayerMismatch,
    #[error("arena mismatch: {0}")]
    ArenaMismatch(String),
    #[error("not a path in the arena")]
    NotAPath,
    #[error("instance too large for this oracle: {size} exceeds limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("oracle invariant violated: {0}")]
    OracleViolation(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}
