use thiserror::Error;

use crate::qubit::QubitId;
use crate::rewrite::Rule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatternError {
    #[error("entanglement E({0},{0}) acts twice on the same qubit")]
    SelfEntangle(QubitId),
    #[error("qubit {qubit} used by {context} is not in the computation space")]
    NotInSpace { qubit: QubitId, context: String },
    #[error("qubit {0} listed twice in {1}")]
    Duplicate(QubitId, &'static str),
    #[error(
        "patterns cannot be composed: shared qubits {shared:?}, first outputs {outputs:?}, second inputs {inputs:?}"
    )]
    InterfaceMismatch {
        shared: Vec<QubitId>,
        outputs: Vec<QubitId>,
        inputs: Vec<QubitId>,
    },
    #[error("patterns cannot be tensored: qubit {0} is shared")]
    Overlap(QubitId),
    #[error("renaming is not injective: {0} and {1} both map to {2}")]
    NotInjective(QubitId, QubitId, QubitId),
    #[error("renaming is undefined on qubit {0}")]
    PartialMap(QubitId),
    #[error("pattern is not runnable: {0}")]
    Invalid(String),
    #[error("{0}")]
    Argument(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RewriteError {
    #[error("rule {rule} does not match at position {position}")]
    NoMatch { rule: Rule, position: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("internal error: rewriting did not terminate within {limit} steps")]
    StepLimit { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("outcome of qubit {0} is not known yet")]
    MissingOutcome(QubitId),
    #[error("qubit {0} is not live (already measured or never prepared)")]
    DeadQubit(QubitId),
    #[error("input state has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("input state is zero")]
    ZeroInput,
    #[error("pattern is not deterministic")]
    NotDeterministic,
    #[error("pattern has no nonzero branch")]
    NoBranch,
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("measurement on {0} has an inexact angle; Pauli classification refused")]
    InexactAngle(QubitId),
    #[error("pattern is not standard")]
    NotStandard,
    #[error("pattern has non-Pauli measurements")]
    NotPauliOnly,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("matrix of shape {0}x{1} is not a square power-of-two operator on at most {2} qubits")]
    BadShape(usize, usize, usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Sim(#[from] SimError),
}
