//! Constructive proofs from the graph: left-linear subsumption proofs,
//! one- and two-path disjointness proofs, unsatisfiability proofs.

use crate::graph::{Protector, SmasGraph, SubPath};
use crate::syntax::{Constraint, Granule, Schema, Substitution};

use super::rules::RuleId;
use super::tree::ProofTree;
use super::ProofError;

const G: u32 = 0;
const G1: u32 = 1;
const G2: u32 = 2;
const G3: u32 = 3;
const G1P: u32 = 4;

fn subst(pairs: &[(u32, &Granule)]) -> Substitution {
    pairs.iter().map(|(v, g)| (*v, (*g).clone())).collect()
}

fn infer(rule: RuleId, pairs: &[(u32, &Granule)], premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::infer(rule, subst(pairs), premises).expect("constructor substitutions are complete")
}

/// Proof of a single step `Sub(a,b)`: the constraint itself when declared,
/// otherwise the matching tautology rule.
fn sub_step(a: &Granule, b: &Granule, s: &Schema) -> Result<ProofTree, ProofError> {
    let c = Constraint::sub(a.clone(), b.clone());
    if s.contains(&c) {
        Ok(ProofTree::Axiom(c))
    } else if a == b {
        Ok(infer(RuleId::I1, &[(G, a)], vec![]))
    } else if a.is_bottom() {
        Ok(infer(RuleId::T2, &[(G, b)], vec![]))
    } else if b.is_top() {
        Ok(infer(RuleId::T3, &[(G, a)], vec![]))
    } else {
        Err(ProofError::StepUnavailable(c))
    }
}

/// Left-nested chain of I2 over the steps of `path`, proving
/// `Sub(first, last)`.
pub fn left_linear(path: &SubPath, s: &Schema) -> Result<ProofTree, ProofError> {
    let gs = path.granules();
    let first = &gs[0];
    let mut acc = sub_step(&gs[0], &gs[1], s)?;
    for w in gs[1..].windows(2) {
        let step = sub_step(&w[0], &w[1], s)?;
        acc = infer(RuleId::I2, &[(G1, first), (G2, &w[0]), (G3, &w[1])], vec![acc, step]);
    }
    Ok(acc)
}

/// Proof of the disjointness edge `{a,b}`: declared, or a T1 instance.
fn edge_proof(a: &Granule, b: &Granule, s: &Schema) -> Result<ProofTree, ProofError> {
    let c = Constraint::disj(a.clone(), b.clone());
    if s.contains(&c) {
        Ok(ProofTree::Axiom(c))
    } else if a.is_bottom() || b.is_bottom() {
        let other = if a.is_bottom() { b } else { a };
        Ok(infer(RuleId::T1, &[(G, other)], vec![]))
    } else {
        Err(ProofError::StepUnavailable(c))
    }
}

/// `Disj(x,y)` from paths `x => a`, `y => b` and the edge `{a,b}`: M1 over the
/// second path, then M1 over the first. Trivial paths add no step.
fn protected_pair_proof(p: &Protector, s: &Schema) -> Result<ProofTree, ProofError> {
    let (x, a) = (p.first.first(), p.first.last());
    let (y, b) = (p.second.first(), p.second.last());
    let mut acc = edge_proof(a, b, s)?;
    if y != b {
        let sub = left_linear(&p.second, s)?;
        acc = infer(RuleId::M1, &[(G1, y), (G1P, b), (G2, a)], vec![sub, acc]);
    }
    if x != a {
        let sub = left_linear(&p.first, s)?;
        acc = infer(RuleId::M1, &[(G1, x), (G1P, a), (G2, y)], vec![sub, acc]);
    }
    Ok(acc)
}

/// Proof of `Disj(g1,g2)` from the positive constraints of `s`, whose graph
/// is `graph`.
pub fn disjointness_proof(
    g1: &Granule,
    g2: &Granule,
    graph: &SmasGraph,
    s: &Schema,
) -> Result<ProofTree, ProofError> {
    let c = Constraint::disj(g1.clone(), g2.clone());
    if s.contains(&c) {
        return Ok(ProofTree::Axiom(c));
    }
    if g1.is_bottom() || g2.is_bottom() {
        return edge_proof(g1, g2, s);
    }
    let p = graph.find_protector(g1, g2).ok_or(ProofError::NotEntailed(c))?;
    protected_pair_proof(&p, s)
}

/// Proof of `Sub(g1,g2)` from the positive constraints of `s`.
pub fn subsumption_proof(
    g1: &Granule,
    g2: &Granule,
    graph: &SmasGraph,
    s: &Schema,
) -> Result<ProofTree, ProofError> {
    let c = Constraint::sub(g1.clone(), g2.clone());
    if s.contains(&c) {
        return Ok(ProofTree::Axiom(c));
    }
    let path = graph.sub_star(g1, g2).ok_or(ProofError::NotEntailed(c))?;
    left_linear(&path, s)
}

/// FALSE from the positive constraints of `s`: `Disj(g,g)` for some granule
/// other than bottom, then U1.
pub fn unsat_proof(s: &Schema) -> Result<ProofTree, ProofError> {
    unsat_proof_in(&SmasGraph::build(s), s)
}

pub(crate) fn unsat_proof_in(graph: &SmasGraph, s: &Schema) -> Result<ProofTree, ProofError> {
    let w = graph.unsat_witness().ok_or(ProofError::Satisfiable)?;
    let self_disj = protected_pair_proof(&w.protector, s)?;
    Ok(infer(RuleId::U1, &[(G, &w.start)], vec![self_disj]))
}
