//! Rules, proof trees, proof constructors and contrapositioning.

mod build;
mod contrapose;
mod rules;
mod tree;

use thiserror::Error;

use crate::syntax::Constraint;

pub use build::{disjointness_proof, left_linear, subsumption_proof, unsat_proof};
pub(crate) use build::unsat_proof_in;
pub use contrapose::contrapose;
pub use rules::{swap_rule, RuleId, RuleSet, Schematic};
pub use tree::{Conclusion, ProofTree, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("rule {0} cannot be swapped")]
    NotSwappable(RuleId),
    #[error("rule {rule} has no antecedent at position {position}")]
    BadPosition { rule: RuleId, position: usize },
    #[error("{0} is not an axiom of the proof")]
    LeafAbsent(Constraint),
    #[error("{0} is used more than once in the proof")]
    LeafRepeated(Constraint),
    #[error("step {0} is neither declared nor a tautology")]
    StepUnavailable(Constraint),
    #[error("{0} is not entailed")]
    NotEntailed(Constraint),
    #[error("the positive constraints are satisfiable")]
    Satisfiable,
    #[error("cannot instantiate rule: {0}")]
    Instantiation(String),
}
