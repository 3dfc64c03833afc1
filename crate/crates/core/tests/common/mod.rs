#![allow(dead_code)]

use granlog::{g, Constraint, Granule, ProofTree, RuleId, Schema};
use granlog::syntax::Substitution;

pub fn sub(a: &str, b: &str) -> Constraint {
    Constraint::sub(g(a), g(b))
}

pub fn disj(a: &str, b: &str) -> Constraint {
    Constraint::disj(g(a), g(b))
}

pub fn chain(names: &[&str]) -> Vec<Constraint> {
    names.windows(2).map(|w| sub(w[0], w[1])).collect()
}

pub fn schema(named: &[&str], cs: Vec<Constraint>) -> Schema {
    Schema::new(named.iter().map(|n| g(n)), cs).unwrap()
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn axiom(c: Constraint) -> ProofTree {
    ProofTree::Axiom(c)
}

/// Rule node with variables bound by catalog name: g, g1, g2, g3, g1', g'.
pub fn node(rule: RuleId, binds: &[(&str, &str)], premises: Vec<ProofTree>) -> ProofTree {
    let mut s = Substitution::new();
    for (var, gr) in binds {
        let v = match *var {
            "g" => 0,
            "g1" => 1,
            "g2" => 2,
            "g3" => 3,
            "g1'" => 4,
            "g'" => 5,
            other => panic!("unknown variable {other}"),
        };
        s = s.bind(v, g(gr));
    }
    ProofTree::infer(rule, s, premises).unwrap()
}

/// Left-nested I2 chain proving `Sub(first,last)` from the steps of `path`.
pub fn linear(path: &[&str]) -> ProofTree {
    let mut acc = axiom(sub(path[0], path[1]));
    for w in path[1..].windows(2) {
        acc = node(RuleId::I2, &[("g1", path[0]), ("g2", w[0]), ("g3", w[1])], vec![acc, axiom(sub(w[0], w[1]))]);
    }
    acc
}

pub fn negated_chain() -> Schema {
    let mut cs = chain(&["g1", "g2", "g3"]);
    cs.extend(chain(&["g4", "g5", "g6"]));
    cs.push(sub("g1", "g6").negate());
    schema(&["g1", "g2", "g3", "g4", "g5", "g6"], cs)
}

pub fn negated_chain_expected() -> ProofTree {
    let not_g1g5 = node(
        RuleId::I2sb,
        &[("g1", "g1"), ("g2", "g5"), ("g3", "g6")],
        vec![axiom(sub("g1", "g6").negate()), axiom(sub("g5", "g6"))],
    );
    let not_g1g4 = node(
        RuleId::I2sb,
        &[("g1", "g1"), ("g2", "g4"), ("g3", "g5")],
        vec![not_g1g5, axiom(sub("g4", "g5"))],
    );
    node(
        RuleId::I2sa,
        &[("g1", "g1"), ("g2", "g3"), ("g3", "g4")],
        vec![linear(&["g1", "g2", "g3"]), not_g1g4],
    )
}

pub fn complement_clash() -> Schema {
    let mut cs = chain(&["g1", "g2", "g3"]);
    cs.extend(chain(&["g4", "g5", "g6"]));
    cs.push(disj("g3", "g6"));
    cs.push(disj("g1", "g4").negate());
    schema(&["g1", "g2", "g3", "g4", "g5", "g6"], cs)
}

pub fn complement_clash_positive_expected() -> ProofTree {
    let inner = node(
        RuleId::M1,
        &[("g1", "g4"), ("g1'", "g6"), ("g2", "g3")],
        vec![linear(&["g4", "g5", "g6"]), axiom(disj("g3", "g6"))],
    );
    node(RuleId::M1, &[("g1", "g1"), ("g1'", "g3"), ("g2", "g4")], vec![linear(&["g1", "g2", "g3"]), inner])
}

pub fn complement_clash_expected() -> ProofTree {
    node(
        RuleId::C2,
        &[("g1", "g1"), ("g2", "g4")],
        vec![complement_clash_positive_expected(), axiom(disj("g1", "g4").negate())],
    )
}

pub fn two_paths() -> Schema {
    let mut cs = chain(&["g1", "g2", "g3", "g4"]);
    cs.extend(chain(&["g5", "g6", "g7", "g8"]));
    cs.push(disj("g4", "g8"));
    Schema::from_constraints(cs)
}

pub fn two_paths_expected() -> ProofTree {
    let inner = node(
        RuleId::M1,
        &[("g1", "g5"), ("g1'", "g8"), ("g2", "g4")],
        vec![linear(&["g5", "g6", "g7", "g8"]), axiom(disj("g4", "g8"))],
    );
    node(RuleId::M1, &[("g1", "g1"), ("g1'", "g4"), ("g2", "g5")], vec![linear(&["g1", "g2", "g3", "g4"]), inner])
}

pub fn self_disjoint() -> Schema {
    let mut cs = chain(&["g1", "g2", "g3", "g4"]);
    cs.extend(chain(&["g1", "g5", "g6", "g7"]));
    cs.push(disj("g4", "g7"));
    Schema::from_constraints(cs)
}

pub fn self_disjoint_expected() -> ProofTree {
    let inner = node(
        RuleId::M1,
        &[("g1", "g1"), ("g1'", "g7"), ("g2", "g4")],
        vec![linear(&["g1", "g5", "g6", "g7"]), axiom(disj("g4", "g7"))],
    );
    let self_disj =
        node(RuleId::M1, &[("g1", "g1"), ("g1'", "g4"), ("g2", "g1")], vec![linear(&["g1", "g2", "g3", "g4"]), inner]);
    node(RuleId::U1, &[("g", "g1")], vec![self_disj])
}

pub fn overlap_example() -> Schema {
    schema(
        &["g1", "g2", "g3"],
        vec![
            sub("g1", "g2").negate(),
            sub("g2", "g1").negate(),
            disj("g1", "g2").negate(),
            sub("g2", "g3"),
            sub("g3", "g2").negate(),
            disj("g2", "g3").negate(),
        ],
    )
}

/// Positive atoms over {bot, top, g1, g2, g3} that are neither tautologies
/// nor self-disjointness or subsumption into bottom.
pub fn family_atoms() -> Vec<Constraint> {
    let sides = ["top", "g1", "g2", "g3"];
    let mut out = Vec::new();
    for a in sides {
        for b in ["g1", "g2", "g3"] {
            if a != b {
                out.push(sub(a, b));
            }
        }
    }
    for (i, a) in sides.iter().enumerate() {
        for b in &sides[i + 1..] {
            out.push(disj(a, b));
        }
    }
    out
}

pub fn small_universe() -> Vec<Granule> {
    vec![g("g1"), g("g2"), g("g3")]
}
