//! Models as sets of inhabited membership patterns, constraint evaluation,
//! the brute-force oracle and the canonical (Armstrong) model.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::SmasGraph;
use crate::syntax::{Constraint, Granule, Pred, Schema, Sign};

/// Largest number of candidate patterns the oracle enumerates subsets of.
pub const MAX_ORACLE_PATTERNS: usize = 16;
/// Largest universe (bottom and top included) an [`AtomModel`] can describe.
pub const MAX_MODEL_GRANULES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("granule `{0}` is not in the model's universe")]
    UnknownGranule(String),
    #[error("universe too large: {patterns} candidate patterns, at most {limit} supported")]
    TooLargeForOracle { patterns: usize, limit: usize },
    #[error("universe too large: {granules} granules, at most {limit} supported")]
    TooLargeForModel { granules: usize, limit: usize },
    #[error("the positive constraints are unsatisfiable")]
    Unsatisfiable,
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsMode {
    Full,
    StrongQuasi,
    Quasi,
}

const BOTTOM_BIT: u64 = 1;
const TOP_BIT: u64 = 2;

/// A granule structure up to the binary constraints it satisfies: one
/// representative element per inhabited membership pattern.
///
/// Patterns are bitmasks over the universe in canonical order, so bit 0 is
/// bottom and bit 1 is top. In full and strong-quasi mode the top bit is
/// always set and the bottom bit never is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomModel {
    mode: SemanticsMode,
    universe: Arc<[Granule]>,
    patterns: Vec<u64>,
}

fn universe_of(s: &Schema) -> Arc<[Granule]> {
    s.universe().iter().cloned().collect()
}

fn bit_of(universe: &[Granule], g: &Granule) -> Result<u64, SemanticsError> {
    universe
        .binary_search(g)
        .map(|i| 1u64 << i)
        .map_err(|_| SemanticsError::UnknownGranule(g.to_string()))
}

/// Whether an element with membership `pattern` is a counterexample to the
/// positive atom.
fn violates(pattern: u64, pred: Pred, a: u64, b: u64) -> bool {
    match pred {
        Pred::Sub => pattern & a != 0 && pattern & b == 0,
        Pred::Disj => pattern & a != 0 && pattern & b != 0,
    }
}

impl AtomModel {
    /// Builds a model from membership sets. In full and strong-quasi mode top
    /// membership is implied and bottom may not be listed.
    pub fn new<P, I>(mode: SemanticsMode, s: &Schema, patterns: P) -> Result<Self, SemanticsError>
    where
        P: IntoIterator<Item = I>,
        I: IntoIterator<Item = Granule>,
    {
        let universe = universe_of(s);
        if universe.len() > MAX_MODEL_GRANULES {
            return Err(SemanticsError::TooLargeForModel {
                granules: universe.len(),
                limit: MAX_MODEL_GRANULES,
            });
        }
        let mut masks = Vec::new();
        for p in patterns {
            let mut mask = 0;
            for gr in p {
                mask |= bit_of(&universe, &gr)?;
            }
            match mode {
                SemanticsMode::Full | SemanticsMode::StrongQuasi => {
                    if mask & BOTTOM_BIT != 0 {
                        return Err(SemanticsError::InvalidPattern("bottom is always empty".into()));
                    }
                    mask |= TOP_BIT;
                }
                SemanticsMode::Quasi if mask == 0 => {
                    return Err(SemanticsError::InvalidPattern(
                        "every element belongs to some granule".into(),
                    ));
                }
                SemanticsMode::Quasi => {}
            }
            masks.push(mask);
        }
        Ok(Self::from_masks(mode, universe, masks))
    }

    fn from_masks(mode: SemanticsMode, universe: Arc<[Granule]>, mut patterns: Vec<u64>) -> Self {
        patterns.sort_unstable();
        patterns.dedup();
        AtomModel { mode, universe, patterns }
    }

    pub fn mode(&self) -> SemanticsMode {
        self.mode
    }

    /// The same patterns read under another mode.
    pub fn with_mode(&self, mode: SemanticsMode) -> Self {
        AtomModel { mode, ..self.clone() }
    }

    pub fn universe(&self) -> &[Granule] {
        &self.universe
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    /// Inhabited patterns as granule lists in canonical order (top included
    /// where it is a member).
    pub fn patterns(&self) -> Vec<Vec<&Granule>> {
        self.patterns
            .iter()
            .map(|&p| {
                self.universe.iter().enumerate().filter(|(i, _)| p & (1 << i) != 0).map(|(_, g)| g).collect()
            })
            .collect()
    }

    /// One line per inhabited pattern, member names space-separated.
    pub fn dump(&self) -> String {
        self.patterns()
            .iter()
            .map(|p| p.iter().map(|g| g.name()).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.patterns()
                .iter()
                .map(|p| p.iter().map(|g| serde_json::Value::from(g.name())).collect())
                .collect(),
        )
    }

    /// Mode invariants: top is everything and bottom nothing outside quasi
    /// mode; every element is in some granule in quasi mode; in full mode the
    /// domain is nonempty and every named granule is inhabited.
    pub fn is_valid(&self) -> bool {
        let named = (1u64.checked_shl(self.universe.len() as u32).unwrap_or(0)).wrapping_sub(1)
            & !(BOTTOM_BIT | TOP_BIT);
        match self.mode {
            SemanticsMode::Quasi => self.patterns.iter().all(|&p| p != 0),
            SemanticsMode::StrongQuasi => {
                self.patterns.iter().all(|&p| p & TOP_BIT != 0 && p & BOTTOM_BIT == 0)
            }
            SemanticsMode::Full => {
                let union = self.patterns.iter().fold(0, |acc, &p| acc | p);
                self.with_mode(SemanticsMode::StrongQuasi).is_valid()
                    && !self.patterns.is_empty()
                    && union & named == named
            }
        }
    }

    pub fn holds(&self, c: &Constraint) -> Result<bool, SemanticsError> {
        let a = bit_of(&self.universe, c.atom().left())?;
        let b = bit_of(&self.universe, c.atom().right())?;
        let counterexample = self.patterns.iter().any(|&p| violates(p, c.atom().pred(), a, b));
        Ok(match c.sign() {
            Sign::Pos => !counterexample,
            Sign::Neg => counterexample,
        })
    }

    /// Valid for its mode and satisfies every constraint of `s`.
    pub fn is_model(&self, s: &Schema) -> bool {
        self.is_valid() && s.constraints().iter().all(|c| self.holds(c).unwrap_or(false))
    }
}

impl fmt::Display for AtomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

pub fn holds(m: &AtomModel, c: &Constraint) -> Result<bool, SemanticsError> {
    m.holds(c)
}

pub fn is_model(m: &AtomModel, s: &Schema) -> bool {
    m.is_model(s)
}

/// Exhaustive model enumeration over all sets of candidate patterns.
#[derive(Debug, Clone)]
pub struct Oracle {
    mode: SemanticsMode,
    universe: Arc<[Granule]>,
    candidates: Vec<u64>,
    /// Each model is a bitmask over `candidates`.
    models: Vec<u32>,
}

impl Oracle {
    pub fn new(s: &Schema, mode: SemanticsMode) -> Result<Self, SemanticsError> {
        let universe = universe_of(s);
        let named = s.named_count();
        let candidates: Vec<u64> = match mode {
            SemanticsMode::Full | SemanticsMode::StrongQuasi if named <= 4 => {
                (0..1u64 << named).map(|m| (m << 2) | TOP_BIT).collect()
            }
            SemanticsMode::Quasi if named <= 2 => (1..1u64 << (named + 2)).collect(),
            SemanticsMode::Full | SemanticsMode::StrongQuasi => {
                return Err(SemanticsError::TooLargeForOracle {
                    patterns: 1usize.checked_shl(named as u32).unwrap_or(usize::MAX),
                    limit: MAX_ORACLE_PATTERNS,
                })
            }
            SemanticsMode::Quasi => {
                return Err(SemanticsError::TooLargeForOracle {
                    patterns: 1usize.checked_shl(named as u32 + 2).unwrap_or(usize::MAX) - 1,
                    limit: MAX_ORACLE_PATTERNS,
                })
            }
        };
        let mut oracle = Oracle { mode, universe, candidates, models: Vec::new() };
        let checks: Vec<(Sign, u32)> = s
            .constraints()
            .iter()
            .map(|c| Ok((c.sign(), oracle.violation_mask(c)?)))
            .collect::<Result<_, SemanticsError>>()?;
        let n = oracle.candidates.len();
        let named_bits = oracle.candidates.iter().fold(0, |acc, &p| acc | p) & !(BOTTOM_BIT | TOP_BIT);
        for set in 0..(1u64 << n) {
            let set = set as u32;
            // candidates are valid patterns for the mode, so only full mode
            // constrains the set as a whole
            let valid = oracle.mode != SemanticsMode::Full || {
                let union = (0..n).filter(|i| set & (1 << i) != 0).fold(0, |acc, i| acc | oracle.candidates[i]);
                set != 0 && union & named_bits == named_bits
            };
            let ok = valid
                && checks.iter().all(|&(sign, viol)| match sign {
                    Sign::Pos => set & viol == 0,
                    Sign::Neg => set & viol != 0,
                });
            if ok {
                oracle.models.push(set);
            }
        }
        Ok(oracle)
    }

    /// Candidates that are counterexamples to the positive atom of `c`.
    fn violation_mask(&self, c: &Constraint) -> Result<u32, SemanticsError> {
        let a = bit_of(&self.universe, c.atom().left())?;
        let b = bit_of(&self.universe, c.atom().right())?;
        Ok(self
            .candidates
            .iter()
            .enumerate()
            .filter(|(_, &p)| violates(p, c.atom().pred(), a, b))
            .fold(0, |acc, (i, _)| acc | 1 << i))
    }

    fn model(&self, set: u32) -> AtomModel {
        let patterns = self
            .candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| set & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        AtomModel::from_masks(self.mode, self.universe.clone(), patterns)
    }

    pub fn model_count(&self) -> usize {
        self.models.len()
    }

    pub fn models(&self) -> impl Iterator<Item = AtomModel> + '_ {
        self.models.iter().map(|&set| self.model(set))
    }

    pub fn satisfiable(&self) -> bool {
        !self.models.is_empty()
    }

    pub fn entails(&self, c: &Constraint) -> Result<bool, SemanticsError> {
        let viol = self.violation_mask(c)?;
        Ok(self.models.iter().all(|&set| match c.sign() {
            Sign::Pos => set & viol == 0,
            Sign::Neg => set & viol != 0,
        }))
    }

    /// A model of the schema in which `c` fails, if any.
    pub fn countermodel(&self, c: &Constraint) -> Result<Option<AtomModel>, SemanticsError> {
        let viol = self.violation_mask(c)?;
        Ok(self
            .models
            .iter()
            .find(|&&set| match c.sign() {
                Sign::Pos => set & viol != 0,
                Sign::Neg => set & viol == 0,
            })
            .map(|&set| self.model(set)))
    }
}

pub fn enumerate_models(s: &Schema, mode: SemanticsMode) -> Result<Vec<AtomModel>, SemanticsError> {
    Ok(Oracle::new(s, mode)?.models().collect())
}

pub fn oracle_entails(s: &Schema, c: &Constraint, mode: SemanticsMode) -> Result<bool, SemanticsError> {
    Oracle::new(s, mode)?.entails(c)
}

pub fn oracle_satisfiable(s: &Schema, mode: SemanticsMode) -> Result<bool, SemanticsError> {
    Ok(Oracle::new(s, mode)?.satisfiable())
}

/// The canonical full model of the positive constraints of `s`: a witness
/// element for every granule other than bottom, holding exactly the granules
/// it is entailed to be below, and one element per unprotected pair holding
/// the union of both.
pub fn canonical_model(s: &Schema) -> Result<AtomModel, SemanticsError> {
    let universe = universe_of(s);
    if universe.len() > MAX_MODEL_GRANULES {
        return Err(SemanticsError::TooLargeForModel {
            granules: universe.len(),
            limit: MAX_MODEL_GRANULES,
        });
    }
    let graph = SmasGraph::build(s);
    if graph.is_unsatisfiable() {
        return Err(SemanticsError::Unsatisfiable);
    }
    let n = universe.len();
    let up: Vec<u64> = (0..n)
        .map(|v| {
            let r = graph.reach(v);
            (0..n).filter(|&w| r.reaches(w)).fold(0, |acc, w| acc | 1 << w)
        })
        .collect();
    let d_edges: Vec<u64> = graph
        .d_edges()
        .map(|(a, b)| (1u64 << graph.index_of(a).unwrap()) | (1u64 << graph.index_of(b).unwrap()))
        .collect();
    let protected = |set: u64| d_edges.iter().any(|&e| set & e == e);
    let mut patterns: Vec<u64> = up[1..].to_vec();
    for a in 1..n {
        for b in a + 1..n {
            let joined = up[a] | up[b];
            if !protected(joined) {
                patterns.push(joined);
            }
        }
    }
    Ok(AtomModel::from_masks(SemanticsMode::Full, universe, patterns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::g;

    fn schema(named: &[&str], cs: Vec<Constraint>) -> Schema {
        Schema::new(named.iter().map(|n| g(n)), cs).unwrap()
    }

    #[test]
    fn holds_examples() {
        let s = schema(&["g1", "g2"], vec![]);
        let m = AtomModel::new(SemanticsMode::Full, &s, [vec![g("g1"), g("g2")], vec![g("g2")]]).unwrap();
        assert!(m.holds(&Constraint::sub(g("g1"), g("g2"))).unwrap());
        assert!(!m.holds(&Constraint::disj(g("g1"), g("g2"))).unwrap());
        assert!(m.holds(&Constraint::sub(g("bot"), g("g1"))).unwrap());
        assert!(m.holds(&Constraint::disj(g("g1"), g("g2")).negate()).unwrap());
        assert!(m.holds(&Constraint::sub(g("g3"), g("g1"))).is_err());
    }

    #[test]
    fn is_model_examples() {
        let s = schema(&["g1", "g2"], vec![Constraint::disj(g("g1"), g("g2"))]);
        let empty: [Vec<Granule>; 0] = [];
        let sq = AtomModel::new(SemanticsMode::StrongQuasi, &s, empty.clone()).unwrap();
        assert!(sq.is_model(&s));
        let full = AtomModel::new(SemanticsMode::Full, &s, empty).unwrap();
        assert!(!full.is_model(&s));
        let m = AtomModel::new(SemanticsMode::Full, &s, [vec![g("g1")], vec![g("g2")]]).unwrap();
        assert!(m.is_model(&s));
    }

    #[test]
    fn enumeration_single_granule() {
        let s = schema(&["g"], vec![]);
        let models = enumerate_models(&s, SemanticsMode::Full).unwrap();
        assert_eq!(models.len(), 2);
        let dumps: Vec<String> = models.iter().map(|m| m.dump()).collect();
        assert!(dumps.contains(&"top g\n".to_string()));
        assert!(dumps.contains(&"top\ntop g\n".to_string()));
    }

    #[test]
    fn self_disjoint_has_no_full_model() {
        let s = schema(&["g"], vec![Constraint::disj(g("g"), g("g"))]);
        assert!(enumerate_models(&s, SemanticsMode::Full).unwrap().is_empty());
        let sq = enumerate_models(&s, SemanticsMode::StrongQuasi).unwrap();
        assert!(sq.iter().any(|m| m.pattern_count() == 0));
    }

    #[test]
    fn oracle_examples() {
        let s = schema(
            &["g1", "g2", "g3"],
            vec![Constraint::sub(g("g1"), g("g2")), Constraint::disj(g("g2"), g("g3"))],
        );
        assert!(oracle_entails(&s, &Constraint::disj(g("g1"), g("g3")), SemanticsMode::Full).unwrap());
        let s = schema(&["g1", "g2"], vec![]);
        assert!(!oracle_entails(&s, &Constraint::sub(g("g1"), g("g2")), SemanticsMode::Full).unwrap());
        let s = schema(&["g1", "g2"], vec![Constraint::sub(g("g1"), g("g2"))]);
        assert!(oracle_satisfiable(&s, SemanticsMode::Full).unwrap());
    }

    #[test]
    fn oracle_cap() {
        let names = ["a", "b", "c", "d", "e"];
        let s = schema(&names, vec![]);
        assert!(matches!(
            Oracle::new(&s, SemanticsMode::Full),
            Err(SemanticsError::TooLargeForOracle { .. })
        ));
        let s = schema(&names[..3], vec![]);
        assert!(Oracle::new(&s, SemanticsMode::Quasi).is_err());
        assert!(Oracle::new(&schema(&names[..2], vec![]), SemanticsMode::Quasi).is_ok());
    }

    #[test]
    fn canonical_model_of_empty_schema_satisfies_only_tautologies() {
        let s = schema(&["g1", "g2"], vec![]);
        let m = canonical_model(&s).unwrap();
        assert!(m.is_model(&s));
        for c in s.ground_atoms() {
            let taut = c.class() == crate::syntax::SyntacticClass::Tautology;
            assert_eq!(m.holds(&c).unwrap(), taut, "{c}");
        }
    }

    #[test]
    fn canonical_model_single_granule() {
        let s = schema(&["g1"], vec![]);
        let m = canonical_model(&s).unwrap();
        assert!(!m.holds(&Constraint::sub(g("top"), g("g1"))).unwrap());
    }

    #[test]
    fn canonical_model_examples() {
        let s = schema(&["g1", "g2"], vec![Constraint::sub(g("g1"), g("g2"))]);
        let m = canonical_model(&s).unwrap();
        assert!(m.holds(&Constraint::sub(g("g1"), g("g2"))).unwrap());
        assert!(!m.holds(&Constraint::sub(g("g2"), g("g1"))).unwrap());
        assert!(!m.holds(&Constraint::disj(g("g1"), g("g2"))).unwrap());

        let s = schema(&["g1", "g2"], vec![Constraint::disj(g("g1"), g("g2"))]);
        let m = canonical_model(&s).unwrap();
        assert!(m.holds(&Constraint::disj(g("g1"), g("g2"))).unwrap());
        assert!(!m.holds(&Constraint::sub(g("g1"), g("g2"))).unwrap());

        let s = schema(&["g"], vec![Constraint::sub(g("g"), g("bot"))]);
        assert_eq!(canonical_model(&s), Err(SemanticsError::Unsatisfiable));
    }
}
