//! Proof contrapositioning.

use crate::syntax::Constraint;

use super::tree::{Conclusion, ProofTree};
use super::ProofError;

/// Turns a proof of `beta` from `A + {leaf}` into a proof of `!leaf` from
/// `A + {!beta}` by swapping every rule on the path from `leaf` to the root.
/// When `beta` is FALSE no premise replaces it.
pub fn contrapose(t: &ProofTree, leaf: &Constraint) -> Result<ProofTree, ProofError> {
    match t.antecedents().iter().filter(|c| **c == leaf).count() {
        0 => return Err(ProofError::LeafAbsent(leaf.clone())),
        1 => {}
        _ => return Err(ProofError::LeafRepeated(leaf.clone())),
    }
    if let ProofTree::Axiom(c) = t {
        return Ok(ProofTree::Axiom(c.negate()));
    }

    // nodes from the root down to the parent of the leaf, with the index of
    // the child leading towards it
    let mut path: Vec<(&ProofTree, usize)> = Vec::new();
    let mut cur = t;
    while !matches!(cur, ProofTree::Axiom(_)) {
        let i = cur
            .premises()
            .iter()
            .position(|p| p.antecedents().contains(&leaf))
            .expect("the leaf occurs below this node");
        path.push((cur, i));
        cur = &cur.premises()[i];
    }

    let mut acc: Option<ProofTree> = match t.conclusion() {
        Conclusion::Formula(beta) => Some(ProofTree::Axiom(beta.negate())),
        _ => None,
    };
    for (node, i) in path {
        let ProofTree::Step { rule, subst, premises, .. } = node else {
            unreachable!("only rule nodes have premises")
        };
        let swapped = rule.swapped(i).ok_or(ProofError::NotSwappable(*rule))?;
        let mut new_premises: Vec<ProofTree> = Vec::with_capacity(premises.len());
        for (j, p) in premises.iter().enumerate() {
            if j != i {
                new_premises.push(p.clone());
            } else if let Some(a) = acc.take() {
                new_premises.push(a);
            }
        }
        acc = Some(ProofTree::infer(swapped, subst.clone(), new_premises)?);
    }
    Ok(acc.expect("the path is nonempty"))
}
