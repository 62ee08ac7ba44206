//! Categorification obstructions for commutative fusion rings: codegrees,
//! induction images, the dimension system for `I(1)`, and a Gram
//! factorization search over the Hom matrix of induced objects.

mod classify;
mod codegree;
mod gram;
mod i1;
mod induction;
mod pipeline;

pub use classify::{classify_rank4_mr, sweep_mr, ClassificationColumn, ClassificationEntry, ClassificationTable};
pub use codegree::{codegree_matrix, codegrees, squares_codegree_matrix, Codegrees};
pub use gram::{gram_brute_force, gram_of, gram_search, GramOutcome, GramProblem, GramStatus, PruneStats};
pub use i1::{i1_dimension_system, ConstraintPart, I1Row, I1System, LinearConstraint};
pub use induction::{induction_images, InductionImages};
pub use pipeline::{
    obstruct, replay, GramWitness, ObstructOptions, ObstructionCertificate, ReplayReport, ScreenEntry, Step, Verdict,
    FEASIBLE_LABEL,
};

use thiserror::Error;

/// Reasons a computation cannot reach a verdict.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("non-quadratic codegree: residual factor {residual}")]
    NonQuadratic { residual: String },
    #[error("exactness failure: {0}")]
    Exactness(String),
    #[error("search cap of {cap} exceeded")]
    Cap { cap: u64 },
}

/// Default node budget for the Gram search.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;
