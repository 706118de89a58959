use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants that indicate a violated theorem-level guarantee (they can only
/// fire on an implementation bug) are grouped at the bottom.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relations contain a directed cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("`{0}` and `{1}` are not comparable as required")]
    NotComparable(String, String),
    #[error("linear extensions share element `{0}`")]
    OverlappingGroundSets(String),
    #[error("pair (`{0}`, `{1}`) is not an incomparable pair")]
    NotIncomparable(String, String),
    #[error("pair (`{0}`, `{1}`) listed twice")]
    DuplicatePair(String, String),
    #[error("input set is empty")]
    EmptyInput,
    #[error("parameter must be positive, got {0}")]
    NonPositive(i64),
    #[error("Kelly poset needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("graph is not planar (no rotation system of genus 0)")]
    NotPlanar,
    #[error("poset is not connected")]
    NotConnected,
    #[error("`{0}` is not a minimal element")]
    NotMinimal(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("pair set is not doubly exposed: {0}")]
    NotDoublyExposed(String),
    #[error("`{0}` is not a vertex of the tree")]
    NotInTree(String),
    #[error("`{0}` has no path to the interior of the reference path")]
    Disconnected(String),
    #[error("malformed input: {0}")]
    Input(String),

    #[error("generator validation failed: {0}")]
    ConstructionFailed(String),
    #[error("cycle side classification failed: {0}")]
    ClassificationFailed(String),
    #[error("pigeonhole extraction produced too small a class: {0}")]
    PigeonholeFailed(String),
    #[error("minor model failed verification: {0}")]
    ModelInvalid(String),
    #[error("reduction step `{step}` violated its side condition: {detail}")]
    StepFailed { step: String, detail: String },
}

impl Error {
    /// True for errors that can only be produced by a bug (a theorem-backed
    /// guarantee did not hold).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::ConstructionFailed(_)
                | Error::ClassificationFailed(_)
                | Error::PigeonholeFailed(_)
                | Error::ModelInvalid(_)
                | Error::StepFailed { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
