//! Decision procedures: satisfiability, entailment of either sign with
//! proofs, closure, state vectors and RCC5+ classification.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::SmasGraph;
use crate::proofs::{
    contrapose, disjointness_proof, subsumption_proof, unsat_proof_in, ProofError, ProofTree, RuleId,
};
use crate::semantics::{canonical_model, AtomModel};
use crate::syntax::{Constraint, Granule, Pred, Schema, SchemaError, Sign, Substitution};

/// Countermodels and models are attached up to this many named granules.
pub const MODEL_ATTACH_LIMIT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("internal proof construction failed: {0}")]
    Proof(#[from] ProofError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Entailed { proof: ProofTree, vacuous: bool },
    NotEntailed { countermodel: Option<AtomModel> },
}

impl Decision {
    pub fn is_entailed(&self) -> bool {
        matches!(self, Decision::Entailed { .. })
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            Decision::Entailed { proof, .. } => Some(proof),
            Decision::NotEntailed { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Decision::Entailed { proof, vacuous } => json!({
                "verdict": "entailed",
                "vacuous": vacuous,
                "proof": proof.to_json(),
                "countermodel": Value::Null,
            }),
            Decision::NotEntailed { countermodel } => json!({
                "verdict": "not_entailed",
                "vacuous": false,
                "proof": Value::Null,
                "countermodel": countermodel.as_ref().map_or(Value::Null, |m| m.to_json()),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat { model: Option<AtomModel> },
    Unsat { proof: ProofTree },
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SatResult::Sat { model } => json!({
                "verdict": "sat",
                "proof": Value::Null,
                "model": model.as_ref().map_or(Value::Null, |m| m.to_json()),
            }),
            SatResult::Unsat { proof } => json!({
                "verdict": "unsat",
                "proof": proof.to_json(),
                "model": Value::Null,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn admits(self, value: bool) -> bool {
        match self {
            Truth::True => value,
            Truth::False => !value,
            Truth::Unknown => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        }
    }
}

/// `<Sub(g1,g2), Sub(g2,g1), Disj(g1,g2)>` as entailed true, entailed false,
/// or unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateVector {
    pub sub12: Truth,
    pub sub21: Truth,
    pub disj: Truth,
}

impl StateVector {
    pub fn new(sub12: Truth, sub21: Truth, disj: Truth) -> Self {
        StateVector { sub12, sub21, disj }
    }

    pub fn is_complete(&self) -> bool {
        [self.sub12, self.sub21, self.disj].iter().all(|t| *t != Truth::Unknown)
    }

    pub fn to_json(&self) -> Value {
        json!([self.sub12.name(), self.sub21.name(), self.disj.name()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rcc5Relation {
    DC,
    PO,
    EQ,
    PP,
    PPI,
    EQE,
    PPE,
    PPIE,
}

impl Rcc5Relation {
    pub const ALL: [Rcc5Relation; 8] = [
        Rcc5Relation::DC,
        Rcc5Relation::PO,
        Rcc5Relation::EQ,
        Rcc5Relation::PP,
        Rcc5Relation::PPI,
        Rcc5Relation::EQE,
        Rcc5Relation::PPE,
        Rcc5Relation::PPIE,
    ];

    /// Truth values of `Sub(g1,g2)`, `Sub(g2,g1)`, `Disj(g1,g2)`.
    pub fn signature(self) -> (bool, bool, bool) {
        match self {
            Rcc5Relation::DC => (false, false, true),
            Rcc5Relation::PO => (false, false, false),
            Rcc5Relation::EQ => (true, true, false),
            Rcc5Relation::PP => (true, false, false),
            Rcc5Relation::PPI => (false, true, false),
            Rcc5Relation::EQE => (true, true, true),
            Rcc5Relation::PPE => (true, false, true),
            Rcc5Relation::PPIE => (false, true, true),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rcc5Relation::DC => "DC",
            Rcc5Relation::PO => "PO",
            Rcc5Relation::EQ => "EQ",
            Rcc5Relation::PP => "PP",
            Rcc5Relation::PPI => "PPI",
            Rcc5Relation::EQE => "EQE",
            Rcc5Relation::PPE => "PPE",
            Rcc5Relation::PPIE => "PPIE",
        }
    }
}

impl fmt::Display for Rcc5Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relations whose signature agrees with every known entry of `v`.
pub fn rcc5_classify(v: &StateVector) -> Vec<Rcc5Relation> {
    Rcc5Relation::ALL
        .into_iter()
        .filter(|r| {
            let (a, b, c) = r.signature();
            v.sub12.admits(a) && v.sub21.admits(b) && v.disj.admits(c)
        })
        .collect()
}

enum Status {
    Sat,
    Unsat(ProofTree),
}

/// Proof of a positive constraint from the positive constraints of `s`,
/// assuming they are satisfiable.
fn positive_proof(graph: &SmasGraph, s: &Schema, c: &Constraint) -> Option<ProofTree> {
    let (a, b) = (c.atom().left(), c.atom().right());
    match c.atom().pred() {
        Pred::Sub => subsumption_proof(a, b, graph, s).ok(),
        Pred::Disj if a == b && !a.is_bottom() => None,
        Pred::Disj => disjointness_proof(a, b, graph, s).ok(),
    }
}

fn complement_rule(c: &Constraint) -> RuleId {
    match c.atom().pred() {
        Pred::Sub => RuleId::C1,
        Pred::Disj => RuleId::C2,
    }
}

fn attach_model(s: &Schema) -> Option<AtomModel> {
    if s.named_count() <= MODEL_ATTACH_LIMIT {
        canonical_model(s).ok()
    } else {
        None
    }
}

/// A schema prepared for queries: its positive part, graph and
/// satisfiability status are computed once.
pub struct Engine {
    schema: Schema,
    pos: Schema,
    graph: SmasGraph,
    status: Status,
}

impl Engine {
    pub fn new(schema: &Schema) -> Result<Self, EngineError> {
        let pos = schema.positive_part();
        let graph = SmasGraph::build(&pos);
        let status = if graph.is_unsatisfiable() {
            Status::Unsat(unsat_proof_in(&graph, &pos)?)
        } else {
            let conflict = schema.negative().find_map(|neg| {
                let phi = neg.positive();
                positive_proof(&graph, &pos, &phi).map(|proof| (phi, proof))
            });
            match conflict {
                Some((phi, proof)) => {
                    let subst = Substitution::new()
                        .bind(1, phi.atom().left().clone())
                        .bind(2, phi.atom().right().clone());
                    let rule = complement_rule(&phi);
                    Status::Unsat(ProofTree::infer(rule, subst, vec![proof, ProofTree::Axiom(phi.negate())])?)
                }
                None => Status::Sat,
            }
        };
        Ok(Engine { schema: schema.clone(), pos, graph, status })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn graph(&self) -> &SmasGraph {
        &self.graph
    }

    pub fn is_satisfiable(&self) -> bool {
        matches!(self.status, Status::Sat)
    }

    pub fn check_satisfiable(&self) -> SatResult {
        match &self.status {
            Status::Sat => SatResult::Sat { model: attach_model(&self.pos) },
            Status::Unsat(proof) => SatResult::Unsat { proof: proof.clone() },
        }
    }

    pub fn entails(&self, c: &Constraint) -> Result<Decision, EngineError> {
        self.schema.check_constraint(c)?;
        if let Status::Unsat(proof) = &self.status {
            return Ok(Decision::Entailed { proof: proof.clone(), vacuous: true });
        }
        match c.sign() {
            Sign::Pos => Ok(match positive_proof(&self.graph, &self.pos, c) {
                Some(proof) => Decision::Entailed { proof, vacuous: false },
                None => Decision::NotEntailed { countermodel: attach_model(&self.pos) },
            }),
            Sign::Neg => self.entails_negative(&c.positive()),
        }
    }

    /// `!beta` holds iff adding `beta` makes the positive part unsatisfiable,
    /// or lets it prove some `phi` whose negation is present.
    fn entails_negative(&self, beta: &Constraint) -> Result<Decision, EngineError> {
        let extended = self.pos.with(beta.clone())?;
        let graph = SmasGraph::build(&extended);
        if graph.is_unsatisfiable() {
            let refutation = unsat_proof_in(&graph, &extended)?;
            let proof = contrapose(&refutation, beta)?;
            return Ok(Decision::Entailed { proof, vacuous: false });
        }
        for neg in self.schema.negative() {
            let phi = neg.positive();
            let Some(proof) = positive_proof(&graph, &extended, &phi) else { continue };
            if positive_proof(&self.graph, &self.pos, &phi).is_some() {
                // beta is superfluous; the schema would already be unsatisfiable
                continue;
            }
            let proof = contrapose(&proof, beta)?;
            return Ok(Decision::Entailed { proof, vacuous: false });
        }
        Ok(Decision::NotEntailed { countermodel: attach_model(&extended) })
    }

    /// Every ground constraint over the universe that is entailed.
    pub fn closure(&self) -> Result<BTreeSet<Constraint>, EngineError> {
        let mut out = BTreeSet::new();
        for c in self.schema.ground_constraints() {
            if self.entails(&c)?.is_entailed() {
                out.insert(c);
            }
        }
        Ok(out)
    }

    fn truth(&self, c: Constraint) -> Result<Truth, EngineError> {
        if self.entails(&c)?.is_entailed() {
            Ok(Truth::True)
        } else if self.entails(&c.negate())?.is_entailed() {
            Ok(Truth::False)
        } else {
            Ok(Truth::Unknown)
        }
    }

    pub fn state_vector(&self, g1: &Granule, g2: &Granule) -> Result<StateVector, EngineError> {
        Ok(StateVector {
            sub12: self.truth(Constraint::sub(g1.clone(), g2.clone()))?,
            sub21: self.truth(Constraint::sub(g2.clone(), g1.clone()))?,
            disj: self.truth(Constraint::disj(g1.clone(), g2.clone()))?,
        })
    }
}

pub fn entails(s: &Schema, c: &Constraint) -> Result<Decision, EngineError> {
    Engine::new(s)?.entails(c)
}

/// Entailment of a positive constraint from the positive part of `s` alone.
pub fn entails_positive(s: &Schema, c: &Constraint) -> Result<Decision, EngineError> {
    Engine::new(&s.positive_part())?.entails(c)
}

pub fn check_satisfiable(s: &Schema) -> Result<SatResult, EngineError> {
    Ok(Engine::new(s)?.check_satisfiable())
}

pub fn closure(s: &Schema) -> Result<BTreeSet<Constraint>, EngineError> {
    Engine::new(s)?.closure()
}

pub fn state_vector(s: &Schema, g1: &Granule, g2: &Granule) -> Result<StateVector, EngineError> {
    Engine::new(s)?.state_vector(g1, g2)
}
