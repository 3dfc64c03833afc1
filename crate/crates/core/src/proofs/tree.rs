//! Proof trees, validation and rendering.

use std::collections::HashSet;
use std::fmt::{self, Write};

use serde_json::{json, Value};

use crate::syntax::{Constraint, Granule, Substitution, Term};

use super::rules::{RuleId, RuleSet};
use super::ProofError;

/// What a proof node stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Conclusion {
    /// The artificial antecedent of a rule with no antecedents.
    True,
    False,
    Formula(Constraint),
}

impl Conclusion {
    pub fn formula(&self) -> Option<&Constraint> {
        match self {
            Conclusion::Formula(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::True => f.write_str("TRUE"),
            Conclusion::False => f.write_str("FALSE"),
            Conclusion::Formula(c) => c.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProofTree {
    Axiom(Constraint),
    True,
    Step {
        rule: RuleId,
        subst: Substitution,
        conclusion: Conclusion,
        premises: Vec<ProofTree>,
    },
}

/// Where validation failed: child indices from the root, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {}", self.path, self.reason)
    }
}

impl std::error::Error for ValidationError {}

/// Ground antecedents and consequent of a rule under a substitution.
pub(crate) struct Instance {
    pub antecedents: Vec<Constraint>,
    pub consequent: Conclusion,
}

pub(crate) fn instantiate(rule: RuleId, subst: &Substitution) -> Result<Instance, String> {
    let schema = rule.schematic();
    let ground = |w: &crate::syntax::Wff| {
        w.substitute(subst).ground().ok_or_else(|| format!("{rule}: substitution leaves {w} unbound"))
    };
    let antecedents = schema.antecedents.iter().map(ground).collect::<Result<Vec<_>, _>>()?;
    let consequent = match &schema.consequent {
        Some(w) => Conclusion::Formula(ground(w)?),
        None => Conclusion::False,
    };
    for v in &schema.not_bottom {
        if subst.get(*v) == Some(&Term::Granule(Granule::Bottom)) {
            return Err(format!("{rule}: side condition {} != bot violated", Term::Var(*v)));
        }
    }
    Ok(Instance { antecedents, consequent })
}

impl ProofTree {
    pub fn axiom(c: Constraint) -> Self {
        ProofTree::Axiom(c)
    }

    /// One rule application over `premises`, with the conclusion computed from
    /// the rule. Rules without antecedents take no premises and get a TRUE
    /// leaf.
    pub fn infer(rule: RuleId, subst: Substitution, premises: Vec<ProofTree>) -> Result<Self, ProofError> {
        let inst = instantiate(rule, &subst).map_err(ProofError::Instantiation)?;
        let premises = if inst.antecedents.is_empty() && premises.is_empty() {
            vec![ProofTree::True]
        } else {
            premises
        };
        Ok(ProofTree::Step { rule, subst, conclusion: inst.consequent, premises })
    }

    pub fn conclusion(&self) -> Conclusion {
        match self {
            ProofTree::Axiom(c) => Conclusion::Formula(c.clone()),
            ProofTree::True => Conclusion::True,
            ProofTree::Step { conclusion, .. } => conclusion.clone(),
        }
    }

    pub fn premises(&self) -> &[ProofTree] {
        match self {
            ProofTree::Step { premises, .. } => premises,
            _ => &[],
        }
    }

    pub fn rule(&self) -> Option<RuleId> {
        match self {
            ProofTree::Step { rule, .. } => Some(*rule),
            _ => None,
        }
    }

    /// Axiom leaves, left to right, with repetitions.
    pub fn antecedents(&self) -> Vec<&Constraint> {
        let mut out = Vec::new();
        self.collect_axioms(&mut out);
        out
    }

    fn collect_axioms<'a>(&'a self, out: &mut Vec<&'a Constraint>) {
        match self {
            ProofTree::Axiom(c) => out.push(c),
            ProofTree::True => {}
            ProofTree::Step { premises, .. } => premises.iter().for_each(|p| p.collect_axioms(out)),
        }
    }

    /// No constraint is used as an axiom more than once.
    pub fn single_use(&self) -> bool {
        let mut seen = HashSet::new();
        self.antecedents().into_iter().all(|c| seen.insert(c))
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises().iter().map(|p| p.node_count()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises().iter().map(|p| p.depth()).max().unwrap_or(0)
    }

    /// Rules applied anywhere in the tree, each once.
    pub fn rules_used(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.collect_rules(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_rules(&self, out: &mut Vec<RuleId>) {
        if let ProofTree::Step { rule, premises, .. } = self {
            out.push(*rule);
            premises.iter().for_each(|p| p.collect_rules(out));
        }
    }

    pub fn validate(&self, rules: &RuleSet) -> Result<(), ValidationError> {
        if matches!(self, ProofTree::True) {
            return Err(ValidationError { path: vec![], reason: "TRUE alone is not a proof".into() });
        }
        let mut path = Vec::new();
        self.validate_at(rules, &mut path)
    }

    pub fn is_valid(&self, rules: &RuleSet) -> bool {
        self.validate(rules).is_ok()
    }

    fn validate_at(&self, rules: &RuleSet, path: &mut Vec<usize>) -> Result<(), ValidationError> {
        let fail = |path: &Vec<usize>, reason: String| Err(ValidationError { path: path.clone(), reason });
        let ProofTree::Step { rule, subst, conclusion, premises } = self else {
            return Ok(());
        };
        if !rules.contains(*rule) {
            return fail(path, format!("{rule} is not in {}", rules.name()));
        }
        if !subst.is_ground() {
            return fail(path, format!("{rule}: substitution is not ground"));
        }
        let inst = match instantiate(*rule, subst) {
            Ok(i) => i,
            Err(e) => return fail(path, e),
        };
        if &inst.consequent != conclusion {
            return fail(path, format!("{rule} concludes {}, node says {conclusion}", inst.consequent));
        }
        if inst.antecedents.is_empty() {
            if premises.as_slice() != [ProofTree::True] {
                return fail(path, format!("{rule} has no antecedents and takes a single TRUE leaf"));
            }
            return Ok(());
        }
        if premises.len() != inst.antecedents.len() {
            return fail(
                path,
                format!("{rule} takes {} premises, node has {}", inst.antecedents.len(), premises.len()),
            );
        }
        let distinct: HashSet<&Constraint> = inst.antecedents.iter().collect();
        if distinct.len() != inst.antecedents.len() {
            return fail(path, format!("{rule} instance repeats an antecedent"));
        }
        for (i, (p, want)) in premises.iter().zip(&inst.antecedents).enumerate() {
            if p.conclusion().formula() != Some(want) {
                path.push(i);
                return fail(path, format!("expected {want}, premise proves {}", p.conclusion()));
            }
        }
        for (i, p) in premises.iter().enumerate() {
            path.push(i);
            p.validate_at(rules, path)?;
            path.pop();
        }
        Ok(())
    }

    /// Equality up to the order of premises.
    pub fn isomorphic(&self, other: &ProofTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    fn canonical_form(&self) -> String {
        match self {
            ProofTree::Axiom(c) => format!("[{c}]"),
            ProofTree::True => "TRUE".into(),
            ProofTree::Step { rule, subst, conclusion, premises } => {
                let mut kids: Vec<String> = premises.iter().map(|p| p.canonical_form()).collect();
                kids.sort();
                format!("({conclusion} {rule} {subst} {})", kids.join(" "))
            }
        }
    }

    /// Instance labels `d1, d2, ...` in post-order, one per rule node, indexed
    /// by pre-order node number.
    fn labels(&self) -> Vec<Option<usize>> {
        fn walk(t: &ProofTree, next: &mut usize, out: &mut Vec<Option<usize>>) {
            let me = out.len();
            out.push(None);
            for p in t.premises() {
                walk(p, next, out);
            }
            if t.rule().is_some() {
                *next += 1;
                out[me] = Some(*next);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut 0, &mut out);
        out
    }

    /// Indented text, one node per line: the formula, then the rule with its
    /// instance label and substitution, or `axiom`.
    pub fn render_text(&self) -> String {
        fn walk(t: &ProofTree, depth: usize, id: &mut usize, labels: &[Option<usize>], out: &mut String) {
            let me = *id;
            *id += 1;
            let pad = "  ".repeat(depth);
            match t {
                ProofTree::Axiom(c) => {
                    let _ = writeln!(out, "{pad}{c}  axiom");
                }
                ProofTree::True => {
                    let _ = writeln!(out, "{pad}TRUE");
                }
                ProofTree::Step { rule, subst, conclusion, premises } => {
                    let label = labels[me].unwrap_or(0);
                    let _ = writeln!(out, "{pad}{conclusion}  by {rule} d{label} {subst}");
                    for p in premises {
                        walk(p, depth + 1, id, labels, out);
                    }
                }
            }
        }
        let mut out = String::new();
        walk(self, 0, &mut 0, &self.labels(), &mut out);
        out
    }

    /// Graphviz digraph: one vertex per node, edges from a conclusion to its
    /// premises labelled with the instance label and rule.
    pub fn render_dot(&self) -> String {
        fn walk(t: &ProofTree, id: &mut usize, labels: &[Option<usize>], out: &mut String) -> usize {
            let me = *id;
            *id += 1;
            let shape = match t {
                ProofTree::Axiom(_) => " shape=box",
                ProofTree::True => " shape=plaintext",
                ProofTree::Step { .. } => "",
            };
            let _ = writeln!(out, "  v{me} [label=\"{}\"{shape}];", t.conclusion());
            if let ProofTree::Step { rule, premises, .. } = t {
                let label = labels[me].unwrap_or(0);
                for p in premises {
                    let child = walk(p, id, labels, out);
                    let _ = writeln!(out, "  v{me} -> v{child} [label=\"d{label} {rule}\"];");
                }
            }
            me
        }
        let mut out = String::from("digraph proof {\n");
        walk(self, &mut 0, &self.labels(), &mut out);
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        match self {
            ProofTree::Axiom(c) => json!({"kind": "axiom", "constraint": c.to_string()}),
            ProofTree::True => json!({"kind": "true"}),
            ProofTree::Step { rule, subst, conclusion, premises } => {
                let bindings: serde_json::Map<String, Value> = subst
                    .iter()
                    .map(|(v, t)| (Term::Var(v).to_string().trim_start_matches('?').to_string(), Value::from(t.to_string())))
                    .collect();
                json!({
                    "kind": "step",
                    "rule": rule.name(),
                    "subst": bindings,
                    "conclusion": conclusion.to_string(),
                    "premises": premises.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                })
            }
        }
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}
