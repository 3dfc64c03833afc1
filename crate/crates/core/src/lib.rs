//! Reasoning about subsumption and disjointness between granules.
//!
//! A [`Schema`] holds a universe of granules (with the distinguished `bot`
//! and `top`) and signed constraints `Sub(a,b)`, `Disj(a,b)` and their
//! negations. The [`Engine`] decides satisfiability and entailment and
//! returns single-use [`ProofTree`]s; [`semantics`] provides an exhaustive
//! model-enumeration oracle for small universes and a canonical model.
//!
//! ```
//! use granlog::{dsl, Engine, RuleSet};
//!
//! let s = dsl::parse_schema("granules a b c; constraints { Sub(a,b); Disj(b,c); }").unwrap();
//! let q = dsl::parse_constraint("Disj(a,c)", &s).unwrap();
//! let decision = Engine::new(&s).unwrap().entails(&q).unwrap();
//! assert!(decision.proof().unwrap().is_valid(&RuleSet::BFULL));
//! ```

pub mod dsl;
pub mod engine;
pub mod graph;
pub mod proofs;
pub mod semantics;
pub mod syntax;

pub use engine::{
    check_satisfiable, closure, entails, entails_positive, rcc5_classify, state_vector, Decision, Engine,
    EngineError, Rcc5Relation, SatResult, StateVector, Truth,
};
pub use graph::{Protector, SmasGraph, SubPath};
pub use proofs::{contrapose, swap_rule, Conclusion, ProofError, ProofTree, RuleId, RuleSet};
pub use semantics::{canonical_model, AtomModel, Oracle, SemanticsError, SemanticsMode};
pub use syntax::{g, Atom, Constraint, Granule, Literal, Pred, Schema, SchemaError, Sign, SyntacticClass, Term, Wff};
