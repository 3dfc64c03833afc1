//! Granules, terms, signed binary constraints, substitutions and schemas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

pub const BOTTOM_NAME: &str = "bot";
pub const TOP_NAME: &str = "top";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("`{0}` is a reserved granule name")]
    ReservedName(String),
    #[error("`{0}` is not a valid granule name")]
    InvalidName(String),
    #[error("granule `{0}` is not in the universe")]
    UnknownGranule(String),
}

/// A granule. The derived order is the canonical one: bottom, top, then named
/// granules by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Granule {
    Bottom,
    Top,
    Named(Arc<str>),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl Granule {
    /// A named granule. Rejects the reserved names and non-identifiers.
    pub fn named(name: &str) -> Result<Self, SchemaError> {
        if name == BOTTOM_NAME || name == TOP_NAME {
            return Err(SchemaError::ReservedName(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(SchemaError::InvalidName(name.to_string()));
        }
        Ok(Granule::Named(Arc::from(name)))
    }

    /// Resolves `bot` and `top` to the distinguished granules, anything else
    /// to a named granule.
    pub fn from_name(name: &str) -> Result<Self, SchemaError> {
        match name {
            BOTTOM_NAME => Ok(Granule::Bottom),
            TOP_NAME => Ok(Granule::Top),
            other => Granule::named(other),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Granule::Bottom => BOTTOM_NAME,
            Granule::Top => TOP_NAME,
            Granule::Named(n) => n,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Granule::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Granule::Top)
    }

    pub fn is_named(&self) -> bool {
        matches!(self, Granule::Named(_))
    }
}

impl fmt::Display for Granule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shorthand for tests and examples: `g("g1")`, `g("bot")`.
///
/// # Panics
/// On an invalid name.
pub fn g(name: &str) -> Granule {
    Granule::from_name(name).expect("valid granule name")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Granule(Granule),
    Var(u32),
}

impl From<Granule> for Term {
    fn from(g: Granule) -> Self {
        Term::Granule(g)
    }
}

fn var_name(v: u32) -> String {
    match v {
        0 => "g".into(),
        1 => "g1".into(),
        2 => "g2".into(),
        3 => "g3".into(),
        4 => "g1'".into(),
        5 => "g'".into(),
        n => format!("v{n}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Granule(g) => g.fmt(f),
            Term::Var(v) => write!(f, "?{}", var_name(*v)),
        }
    }
}

/// Operand of an atom: either a granule (ground) or a term.
pub trait Operand: Clone + Eq + Ord + Hash + fmt::Display {
    fn ground(&self) -> Option<&Granule>;
}

impl Operand for Granule {
    fn ground(&self) -> Option<&Granule> {
        Some(self)
    }
}

impl Operand for Term {
    fn ground(&self) -> Option<&Granule> {
        match self {
            Term::Granule(g) => Some(g),
            Term::Var(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Sub,
    Disj,
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pred::Sub => "Sub",
            Pred::Disj => "Disj",
        })
    }
}

/// `Sub(left, right)` or `Disj(left, right)`. A ground `Disj` always stores its
/// operands in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom<T> {
    pred: Pred,
    left: T,
    right: T,
}

impl<T: Operand> Atom<T> {
    pub fn new(pred: Pred, left: T, right: T) -> Self {
        Atom { pred, left, right }.normalize()
    }

    pub fn sub(left: T, right: T) -> Self {
        Self::new(Pred::Sub, left, right)
    }

    pub fn disj(left: T, right: T) -> Self {
        Self::new(Pred::Disj, left, right)
    }

    pub fn pred(&self) -> Pred {
        self.pred
    }

    pub fn left(&self) -> &T {
        &self.left
    }

    pub fn right(&self) -> &T {
        &self.right
    }

    pub fn normalize(self) -> Self {
        let swap = self.pred == Pred::Disj
            && matches!((self.left.ground(), self.right.ground()), (Some(a), Some(b)) if a > b);
        if swap {
            Atom { pred: self.pred, left: self.right, right: self.left }
        } else {
            self
        }
    }

    pub fn map<U: Operand>(&self, f: impl Fn(&T) -> U) -> Atom<U> {
        Atom::new(self.pred, f(&self.left), f(&self.right))
    }
}

impl<T: fmt::Display> fmt::Display for Atom<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.pred, self.left, self.right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A signed atom. Ordered by atom first, then sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal<T> {
    atom: Atom<T>,
    sign: Sign,
}

/// A ground signed constraint.
pub type Constraint = Literal<Granule>;
/// A signed formula that may contain granule variables.
pub type Wff = Literal<Term>;

impl<T: Operand> Literal<T> {
    pub fn new(sign: Sign, atom: Atom<T>) -> Self {
        Literal { atom: atom.normalize(), sign }
    }

    pub fn pos(atom: Atom<T>) -> Self {
        Self::new(Sign::Pos, atom)
    }

    pub fn neg(atom: Atom<T>) -> Self {
        Self::new(Sign::Neg, atom)
    }

    pub fn sub(left: T, right: T) -> Self {
        Self::pos(Atom::sub(left, right))
    }

    pub fn disj(left: T, right: T) -> Self {
        Self::pos(Atom::disj(left, right))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn atom(&self) -> &Atom<T> {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn negate(&self) -> Self {
        Literal { atom: self.atom.clone(), sign: self.sign.flip() }
    }

    pub fn normalize(&self) -> Self {
        Self::new(self.sign, self.atom.clone())
    }

    /// The positive literal over the same atom.
    pub fn positive(&self) -> Self {
        Literal { atom: self.atom.clone(), sign: Sign::Pos }
    }
}

impl<T: fmt::Display> fmt::Display for Literal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Neg {
            f.write_str("!")?;
        }
        self.atom.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntacticClass {
    Tautology,
    Unsatisfiable,
    Contingent,
}

impl SyntacticClass {
    fn dual(self) -> Self {
        match self {
            SyntacticClass::Tautology => SyntacticClass::Unsatisfiable,
            SyntacticClass::Unsatisfiable => SyntacticClass::Tautology,
            SyntacticClass::Contingent => SyntacticClass::Contingent,
        }
    }
}

fn atom_class(atom: &Atom<Granule>) -> SyntacticClass {
    let (a, b) = (atom.left(), atom.right());
    match atom.pred() {
        Pred::Sub if a == b || a.is_bottom() || b.is_top() => SyntacticClass::Tautology,
        Pred::Sub if b.is_bottom() => SyntacticClass::Unsatisfiable,
        // operands are canonical, so bottom can only be on the left
        Pred::Disj if a.is_bottom() => SyntacticClass::Tautology,
        // top is the whole domain and every other non-bottom granule is nonempty
        Pred::Disj if a == b || a.is_top() => SyntacticClass::Unsatisfiable,
        _ => SyntacticClass::Contingent,
    }
}

impl Constraint {
    pub fn class(&self) -> SyntacticClass {
        let c = atom_class(self.atom());
        match self.sign() {
            Sign::Pos => c,
            Sign::Neg => c.dual(),
        }
    }

    pub fn granules(&self) -> [&Granule; 2] {
        [self.atom().left(), self.atom().right()]
    }

    pub fn lift(&self) -> Wff {
        Literal::new(self.sign(), self.atom().map(|g| Term::Granule(g.clone())))
    }
}

/// Partial map from variable index to term.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution(BTreeMap<u32, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, var: u32, term: impl Into<Term>) -> Self {
        self.0.insert(var, term.into());
        self
    }

    pub fn get(&self, var: u32) -> Option<&Term> {
        self.0.get(&var)
    }

    pub fn is_ground(&self) -> bool {
        self.0.values().all(|t| matches!(t, Term::Granule(_)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Term)> {
        self.0.iter().map(|(v, t)| (*v, t))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            g => g.clone(),
        }
    }
}

impl FromIterator<(u32, Granule)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (u32, Granule)>>(iter: I) -> Self {
        Substitution(iter.into_iter().map(|(v, g)| (v, Term::Granule(g))).collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:={}", var_name(*v), t)?;
        }
        f.write_str("}")
    }
}

impl Wff {
    pub fn substitute(&self, s: &Substitution) -> Wff {
        Literal::new(self.sign(), self.atom().map(|t| s.apply(t)))
    }

    pub fn ground(&self) -> Option<Constraint> {
        let l = self.atom().left().ground()?.clone();
        let r = self.atom().right().ground()?.clone();
        Some(Literal::new(self.sign(), Atom::new(self.atom().pred(), l, r)))
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        [self.atom().left(), self.atom().right()].into_iter().filter_map(|t| match t {
            Term::Var(v) => Some(*v),
            Term::Granule(_) => None,
        })
    }
}

/// A simple monogranular attribute schema: a granule universe (always holding
/// bottom and top) and a set of normalized constraints over it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    universe: BTreeSet<Granule>,
    constraints: BTreeSet<Constraint>,
}

impl Schema {
    pub fn new(
        granules: impl IntoIterator<Item = Granule>,
        constraints: impl IntoIterator<Item = Constraint>,
    ) -> Result<Self, SchemaError> {
        let mut universe: BTreeSet<Granule> = granules.into_iter().collect();
        universe.insert(Granule::Bottom);
        universe.insert(Granule::Top);
        let constraints: BTreeSet<Constraint> = constraints.into_iter().collect();
        for c in &constraints {
            for gr in c.granules() {
                if !universe.contains(gr) {
                    return Err(SchemaError::UnknownGranule(gr.to_string()));
                }
            }
        }
        Ok(Schema { universe, constraints })
    }

    /// Universe taken from the granules the constraints mention.
    pub fn from_constraints(constraints: impl IntoIterator<Item = Constraint>) -> Self {
        let constraints: BTreeSet<Constraint> = constraints.into_iter().collect();
        let granules: Vec<Granule> =
            constraints.iter().flat_map(|c| c.granules()).cloned().collect();
        Schema::new(granules, constraints).expect("universe covers all constraints")
    }

    pub fn universe(&self) -> &BTreeSet<Granule> {
        &self.universe
    }

    pub fn named(&self) -> impl Iterator<Item = &Granule> {
        self.universe.iter().filter(|g| g.is_named())
    }

    pub fn named_count(&self) -> usize {
        self.universe.len() - 2
    }

    pub fn contains_granule(&self, g: &Granule) -> bool {
        self.universe.contains(g)
    }

    pub fn constraints(&self) -> &BTreeSet<Constraint> {
        &self.constraints
    }

    pub fn contains(&self, c: &Constraint) -> bool {
        self.constraints.contains(c)
    }

    pub fn positive(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.is_positive())
    }

    pub fn negative(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| !c.is_positive())
    }

    pub fn positive_part(&self) -> Schema {
        Schema {
            universe: self.universe.clone(),
            constraints: self.positive().cloned().collect(),
        }
    }

    /// The same universe with one more constraint.
    pub fn with(&self, c: Constraint) -> Result<Schema, SchemaError> {
        let mut constraints = self.constraints.clone();
        constraints.insert(c);
        Schema::new(self.universe.iter().cloned(), constraints)
    }

    pub fn with_constraints(
        &self,
        extra: impl IntoIterator<Item = Constraint>,
    ) -> Result<Schema, SchemaError> {
        let constraints = self.constraints.iter().cloned().chain(extra);
        Schema::new(self.universe.iter().cloned(), constraints)
    }

    pub fn check_constraint(&self, c: &Constraint) -> Result<(), SchemaError> {
        match c.granules().into_iter().find(|gr| !self.universe.contains(*gr)) {
            Some(gr) => Err(SchemaError::UnknownGranule(gr.to_string())),
            None => Ok(()),
        }
    }

    /// Every ground atom over the universe (Sub over ordered pairs, Disj over
    /// unordered pairs including self-pairs), as positive constraints.
    pub fn ground_atoms(&self) -> Vec<Constraint> {
        let gs: Vec<&Granule> = self.universe.iter().collect();
        let mut out = Vec::with_capacity(gs.len() * gs.len() * 3 / 2 + gs.len());
        for a in &gs {
            for b in &gs {
                out.push(Literal::sub((*a).clone(), (*b).clone()));
            }
        }
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i..] {
                out.push(Literal::disj((*a).clone(), (*b).clone()));
            }
        }
        out
    }

    /// Every ground constraint over the universe, both signs.
    pub fn ground_constraints(&self) -> Vec<Constraint> {
        self.ground_atoms().into_iter().flat_map(|c| [c.negate(), c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disj_is_symmetric() {
        assert_eq!(Constraint::disj(g("g2"), g("g1")), Constraint::disj(g("g1"), g("g2")));
        let c = Constraint::disj(g("top"), g("bot")).negate();
        assert_eq!(c.to_string(), "!Disj(bot,top)");
    }

    #[test]
    fn sub_order_kept() {
        assert_eq!(Constraint::sub(g("g2"), g("g1")).to_string(), "Sub(g2,g1)");
    }

    #[test]
    fn negate_is_involution() {
        let c = Constraint::disj(g("g1"), g("g2")).negate();
        assert_eq!(c.negate().negate(), c);
        assert!(c.negate().is_positive());
    }

    #[test]
    fn substitution_examples() {
        let w = Wff::sub(Term::Var(1), Term::Var(2));
        let s = Substitution::new().bind(1, g("g3")).bind(2, g("g4"));
        assert_eq!(w.substitute(&s).ground(), Some(Constraint::sub(g("g3"), g("g4"))));

        let w = Wff::sub(Term::Var(3), g("g1").into());
        let s = Substitution::new().bind(1, g("g3"));
        assert_eq!(w.substitute(&s), w);
        assert_eq!(w.substitute(&s).ground(), None);

        let w = Wff::disj(Term::Var(1), g("g1").into());
        let s = Substitution::new().bind(1, g("g1"));
        assert_eq!(w.substitute(&s).ground(), Some(Constraint::disj(g("g1"), g("g1"))));
    }

    #[test]
    fn substituted_disj_is_normalized() {
        let w = Wff::disj(Term::Var(1), Term::Var(2));
        let s = Substitution::new().bind(1, g("g2")).bind(2, g("g1"));
        assert_eq!(w.substitute(&s).ground(), Some(Constraint::disj(g("g1"), g("g2"))));
    }

    #[test]
    fn classification() {
        use SyntacticClass::*;
        assert_eq!(Constraint::sub(g("bot"), g("g1")).class(), Tautology);
        assert_eq!(Constraint::disj(g("g1"), g("g1")).class(), Unsatisfiable);
        assert_eq!(Constraint::disj(g("g1"), g("g1")).negate().class(), Tautology);
        assert_eq!(Constraint::sub(g("g1"), g("g2")).class(), Contingent);
        assert_eq!(Constraint::sub(g("top"), g("bot")).class(), Unsatisfiable);
        assert_eq!(Constraint::disj(g("bot"), g("bot")).class(), Tautology);
        assert_eq!(Constraint::disj(g("g1"), g("top")).class(), Unsatisfiable);
        assert_eq!(Constraint::sub(g("top"), g("g1")).class(), Contingent);
    }

    #[test]
    fn reserved_names_rejected() {
        assert_eq!(Granule::named("bot"), Err(SchemaError::ReservedName("bot".into())));
        assert!(Granule::named("1x").is_err());
        assert!(Granule::named("").is_err());
    }

    #[test]
    fn schema_rejects_unknown_granule() {
        let r = Schema::new([g("g1")], [Constraint::sub(g("g1"), g("g2"))]);
        assert_eq!(r, Err(SchemaError::UnknownGranule("g2".into())));
    }

    #[test]
    fn ground_space_size() {
        let s = Schema::new([g("g1")], []).unwrap();
        // 3 granules: 9 Sub atoms, 6 Disj atoms
        assert_eq!(s.ground_atoms().len(), 15);
        assert_eq!(s.ground_constraints().len(), 30);
    }
}
