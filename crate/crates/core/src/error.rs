use thiserror::Error;

use crate::formula::CycleFreeReport;

#[derive(Debug, Error)]
pub enum LprlError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("free variable `{0}`")]
    FreeVariable(String),

    #[error("variable `{0}` is bound twice")]
    DuplicateVariable(String),

    #[error("variable `{0}` is quantified but never used")]
    UnusedVariable(String),

    #[error("letter set must be non-empty")]
    EmptyLetterSet,

    #[error("sentence is not cycle-free:\n{0}")]
    NotCycleFree(CycleFreeReport),

    #[error("slot {slot} out of range for width {width}")]
    SlotOutOfRange { slot: usize, width: usize },

    #[error("slots of a binary constraint must differ (both are {0})")]
    SameSlot(usize),

    #[error("automata disagree on {0}")]
    Mismatch(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid lasso word: {0}")]
    Lasso(String),

    #[error("invalid Kripke structure: {0}")]
    Kripke(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exploration exceeded the cap of {0} macro states; result inconclusive")]
    CapExceeded(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LprlError>;
