//! The rule catalog.

use std::fmt;

use crate::syntax::{Granule, Term, Wff};

use super::ProofError;

const G: u32 = 0;
const G1: u32 = 1;
const G2: u32 = 2;
const G3: u32 = 3;
const G1P: u32 = 4;
const GP: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    I1,
    I2,
    M1,
    T1,
    T2,
    T3,
    U1,
    D1,
    M2,
    U2,
    I2sa,
    I2sb,
    M1sa,
    M1sb,
    U1s,
    C1,
    C2,
}

impl RuleId {
    pub const ALL: [RuleId; 17] = [
        RuleId::I1,
        RuleId::I2,
        RuleId::M1,
        RuleId::T1,
        RuleId::T2,
        RuleId::T3,
        RuleId::U1,
        RuleId::D1,
        RuleId::M2,
        RuleId::U2,
        RuleId::I2sa,
        RuleId::I2sb,
        RuleId::M1sa,
        RuleId::M1sb,
        RuleId::U1s,
        RuleId::C1,
        RuleId::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::I1 => "I1",
            RuleId::I2 => "I2",
            RuleId::M1 => "M1",
            RuleId::T1 => "T1",
            RuleId::T2 => "T2",
            RuleId::T3 => "T3",
            RuleId::U1 => "U1",
            RuleId::D1 => "D1",
            RuleId::M2 => "M2",
            RuleId::U2 => "U2",
            RuleId::I2sa => "I2-sa",
            RuleId::I2sb => "I2-sb",
            RuleId::M1sa => "M1-sa",
            RuleId::M1sb => "M1-sb",
            RuleId::U1s => "U1-s",
            RuleId::C1 => "C1",
            RuleId::C2 => "C2",
        }
    }

    /// The catalogued rule obtained by swapping antecedent `position` with
    /// the consequent.
    pub fn swapped(self, position: usize) -> Option<RuleId> {
        match (self, position) {
            (RuleId::I2, 1) => Some(RuleId::I2sa),
            (RuleId::I2, 0) => Some(RuleId::I2sb),
            (RuleId::M1, 1) => Some(RuleId::M1sa),
            (RuleId::M1, 0) => Some(RuleId::M1sb),
            (RuleId::U1, 0) => Some(RuleId::U1s),
            _ => None,
        }
    }

    pub fn schematic(self) -> Schematic {
        let v = Term::Var;
        let bot = || Term::Granule(Granule::Bottom);
        let top = || Term::Granule(Granule::Top);
        let axiom = |consequent: Wff| Schematic { antecedents: vec![], consequent: Some(consequent), not_bottom: vec![] };
        match self {
            RuleId::I1 => axiom(Wff::sub(v(G), v(G))),
            RuleId::T1 => axiom(Wff::disj(bot(), v(G))),
            RuleId::T2 => axiom(Wff::sub(bot(), v(G))),
            RuleId::T3 => axiom(Wff::sub(v(G), top())),
            RuleId::I2 => Schematic {
                antecedents: vec![Wff::sub(v(G1), v(G2)), Wff::sub(v(G2), v(G3))],
                consequent: Some(Wff::sub(v(G1), v(G3))),
                not_bottom: vec![],
            },
            RuleId::M1 => Schematic {
                antecedents: vec![Wff::sub(v(G1), v(G1P)), Wff::disj(v(G1P), v(G2))],
                consequent: Some(Wff::disj(v(G1), v(G2))),
                not_bottom: vec![],
            },
            RuleId::U1 => Schematic {
                antecedents: vec![Wff::disj(v(G), v(G))],
                consequent: None,
                not_bottom: vec![G],
            },
            RuleId::D1 => Schematic {
                antecedents: vec![Wff::disj(v(GP), v(GP))],
                consequent: Some(Wff::disj(v(GP), v(G))),
                not_bottom: vec![],
            },
            RuleId::M2 => Schematic {
                antecedents: vec![Wff::disj(v(GP), v(GP))],
                consequent: Some(Wff::sub(v(GP), v(G))),
                not_bottom: vec![],
            },
            RuleId::U2 => Schematic {
                antecedents: vec![Wff::sub(v(G), bot())],
                consequent: None,
                not_bottom: vec![G],
            },
            RuleId::C1 => Schematic {
                antecedents: vec![Wff::sub(v(G1), v(G2)), Wff::sub(v(G1), v(G2)).negate()],
                consequent: None,
                not_bottom: vec![],
            },
            RuleId::C2 => Schematic {
                antecedents: vec![Wff::disj(v(G1), v(G2)), Wff::disj(v(G1), v(G2)).negate()],
                consequent: None,
                not_bottom: vec![],
            },
            RuleId::I2sa => swap_rule(RuleId::I2, 1).expect("I2 is swappable"),
            RuleId::I2sb => swap_rule(RuleId::I2, 0).expect("I2 is swappable"),
            RuleId::M1sa => swap_rule(RuleId::M1, 1).expect("M1 is swappable"),
            RuleId::M1sb => swap_rule(RuleId::M1, 0).expect("M1 is swappable"),
            RuleId::U1s => swap_rule(RuleId::U1, 0).expect("U1 is swappable"),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Antecedent and consequent shapes of a rule; `consequent: None` is FALSE.
/// Variables listed in `not_bottom` may not be bound to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schematic {
    pub antecedents: Vec<Wff>,
    pub consequent: Option<Wff>,
    pub not_bottom: Vec<u32>,
}

impl fmt::Display for Schematic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ants: Vec<String> = self.antecedents.iter().map(|a| a.to_string()).collect();
        write!(f, "{} |- ", ants.join(", "))?;
        match &self.consequent {
            Some(c) => write!(f, "{c}")?,
            None => f.write_str("FALSE")?,
        }
        for v in &self.not_bottom {
            write!(f, " <{} != bot>", Term::Var(*v))?;
        }
        Ok(())
    }
}

/// Exchanges antecedent `position` with the consequent, negating both. A
/// FALSE consequent contributes no antecedent.
pub fn swap_rule(rule: RuleId, position: usize) -> Result<Schematic, ProofError> {
    let base = rule.schematic();
    if base.antecedents.is_empty() {
        return Err(ProofError::NotSwappable(rule));
    }
    let swapped_out = base
        .antecedents
        .get(position)
        .ok_or(ProofError::BadPosition { rule, position })?
        .negate();
    let mut antecedents = Vec::with_capacity(base.antecedents.len());
    for (i, a) in base.antecedents.into_iter().enumerate() {
        if i != position {
            antecedents.push(a);
        } else if let Some(c) = &base.consequent {
            antecedents.push(c.negate());
        }
    }
    Ok(Schematic { antecedents, consequent: Some(swapped_out), not_bottom: base.not_bottom })
}

/// A named set of rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    name: &'static str,
    rules: &'static [RuleId],
}

impl RuleSet {
    pub const QPOS: RuleSet =
        RuleSet { name: "QPos", rules: &[RuleId::I1, RuleId::I2, RuleId::D1, RuleId::M1, RuleId::M2] };
    pub const SQPOS: RuleSet = RuleSet {
        name: "SQPos",
        rules: &[RuleId::I1, RuleId::I2, RuleId::D1, RuleId::M1, RuleId::M2, RuleId::T1, RuleId::T2, RuleId::T3],
    };
    pub const SQPOS_EXT: RuleSet = RuleSet {
        name: "SQPosExt",
        rules: &[
            RuleId::I1,
            RuleId::I2,
            RuleId::D1,
            RuleId::M1,
            RuleId::M2,
            RuleId::T1,
            RuleId::T2,
            RuleId::T3,
            RuleId::U1,
            RuleId::U2,
        ],
    };
    pub const BPOS: RuleSet = RuleSet {
        name: "BPos",
        rules: &[RuleId::I2, RuleId::M1, RuleId::I1, RuleId::T1, RuleId::T2, RuleId::T3, RuleId::U1],
    };
    pub const BFULL: RuleSet = RuleSet {
        name: "BFull",
        rules: &[
            RuleId::I2,
            RuleId::M1,
            RuleId::I1,
            RuleId::T1,
            RuleId::T2,
            RuleId::T3,
            RuleId::U1,
            RuleId::I2sa,
            RuleId::I2sb,
            RuleId::M1sa,
            RuleId::M1sb,
            RuleId::U1s,
            RuleId::C1,
            RuleId::C2,
        ],
    };

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn rules(&self) -> &'static [RuleId] {
        self.rules
    }

    pub fn contains(&self, r: RuleId) -> bool {
        self.rules.contains(&r)
    }
}
