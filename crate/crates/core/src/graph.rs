//! The graph of a schema: subsumption edges, disjointness edges, reachability,
//! reduced paths and protected pairs.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write};

use crate::syntax::{Constraint, Granule, Pred, Schema};

/// A sequence of granules where consecutive pairs are subsumption edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubPath(Vec<Granule>);

impl SubPath {
    /// # Panics
    /// If fewer than two granules are given.
    pub fn new(granules: Vec<Granule>) -> Self {
        assert!(granules.len() >= 2, "a subsumption path has at least two granules");
        SubPath(granules)
    }

    pub fn granules(&self) -> &[Granule] {
        &self.0
    }

    pub fn first(&self) -> &Granule {
        &self.0[0]
    }

    pub fn last(&self) -> &Granule {
        &self.0[self.0.len() - 1]
    }

    /// Number of granules in the path.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The path `<g,g>`, which carries no information beyond reflexivity.
    pub fn is_trivial(&self) -> bool {
        self.0.len() == 2 && self.0[0] == self.0[1]
    }

    /// The step constraints `Sub(g_i, g_{i+1})`.
    pub fn steps(&self) -> impl Iterator<Item = Constraint> + '_ {
        self.0.windows(2).map(|w| Constraint::sub(w[0].clone(), w[1].clone()))
    }

    /// Length two, or free of repeats and of bottom.
    pub fn is_reduced(&self) -> bool {
        if self.0.len() == 2 {
            return true;
        }
        let mut seen = HashSet::new();
        self.0.iter().all(|g| !g.is_bottom() && seen.insert(g))
    }

    /// Removes cycles, keeping the endpoints. Equal endpoints collapse to
    /// `<g,g>` and a path leaving bottom collapses to the tautology edge.
    pub fn reduce(&self) -> SubPath {
        let (first, last) = (self.first(), self.last());
        if first == last {
            return SubPath(vec![first.clone(), first.clone()]);
        }
        if first.is_bottom() {
            return SubPath(vec![first.clone(), last.clone()]);
        }
        let mut out: Vec<Granule> = Vec::with_capacity(self.0.len());
        let mut pos: HashMap<&Granule, usize> = HashMap::new();
        for gr in &self.0 {
            if let Some(&i) = pos.get(gr) {
                for dropped in out.drain(i + 1..) {
                    pos.remove(&dropped);
                }
            } else {
                pos.insert(gr, out.len());
                out.push(gr.clone());
            }
        }
        SubPath(out)
    }
}

impl fmt::Display for SubPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, gr) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            gr.fmt(f)?;
        }
        f.write_str(">")
    }
}

/// Subsumption paths from `first.first()` and `second.first()` into the two
/// ends of a disjointness edge `{first.last(), second.last()}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protector {
    pub first: SubPath,
    pub second: SubPath,
}

impl Protector {
    pub fn pair(&self) -> (&Granule, &Granule) {
        (self.first.last(), self.second.last())
    }
}

/// Evidence that a granule is forced empty: after trimming the shared prefix,
/// `protector` runs from `start` along two paths into a disjointness edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDisjointness {
    pub granule: Granule,
    pub start: Granule,
    pub protector: Protector,
}

/// Breadth-first search tree from one vertex.
#[derive(Debug, Clone)]
pub struct Reach {
    start: usize,
    dist: Vec<u32>,
    parent: Vec<usize>,
}

const UNREACHED: u32 = u32::MAX;

impl Reach {
    pub fn reaches(&self, v: usize) -> bool {
        self.dist[v] != UNREACHED
    }

    pub fn dist(&self, v: usize) -> Option<u32> {
        self.reaches(v).then_some(self.dist[v])
    }

    /// Vertex indices from the start to `v`; a single vertex when `v` is the
    /// start.
    fn tree_path(&self, v: usize) -> Option<Vec<usize>> {
        if !self.reaches(v) {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.start {
            cur = self.parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Debug, Clone)]
pub struct SmasGraph {
    granules: Vec<Granule>,
    index: HashMap<Granule, usize>,
    succ: Vec<Vec<usize>>,
    disj: Vec<Vec<usize>>,
    declared: HashSet<Constraint>,
}

impl SmasGraph {
    /// Builds the graph of the positive constraints of `s`, with every
    /// tautology edge materialized.
    pub fn build(s: &Schema) -> Self {
        let granules: Vec<Granule> = s.universe().iter().cloned().collect();
        let index: HashMap<Granule, usize> =
            granules.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let n = granules.len();
        let bot = index[&Granule::Bottom];
        let top = index[&Granule::Top];
        let mut succ = vec![Vec::new(); n];
        let mut disj = vec![Vec::new(); n];
        for v in 0..n {
            succ[v].push(v);
            succ[v].push(top);
            succ[bot].push(v);
            disj[bot].push(v);
            if v != bot {
                disj[v].push(bot);
            }
        }
        let mut declared = HashSet::new();
        for c in s.positive() {
            let a = index[c.atom().left()];
            let b = index[c.atom().right()];
            match c.atom().pred() {
                Pred::Sub => succ[a].push(b),
                Pred::Disj => {
                    disj[a].push(b);
                    if a != b {
                        disj[b].push(a);
                    }
                }
            }
            declared.insert(c.clone());
        }
        for adj in succ.iter_mut().chain(disj.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        SmasGraph { granules, index, succ, disj, declared }
    }

    pub fn granules(&self) -> &[Granule] {
        &self.granules
    }

    pub fn index_of(&self, g: &Granule) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn granule(&self, v: usize) -> &Granule {
        &self.granules[v]
    }

    /// Whether `c` is one of the positive constraints the graph was built from.
    pub fn is_declared(&self, c: &Constraint) -> bool {
        self.declared.contains(c)
    }

    pub fn s_edges(&self) -> impl Iterator<Item = (&Granule, &Granule)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(move |(a, adj)| adj.iter().map(move |&b| (&self.granules[a], &self.granules[b])))
    }

    /// Disjointness edges as canonically ordered pairs; `(g, g)` for a singleton.
    pub fn d_edges(&self) -> impl Iterator<Item = (&Granule, &Granule)> {
        self.d_edge_indices().map(|(a, b)| (&self.granules[a], &self.granules[b]))
    }

    fn d_edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.disj
            .iter()
            .enumerate()
            .flat_map(|(a, adj)| adj.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
    }

    pub fn has_s_edge(&self, a: &Granule, b: &Granule) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.succ[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    pub fn has_d_edge(&self, a: &Granule, b: &Granule) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.disj[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    /// Breadth-first search along subsumption edges. Bottom is never left
    /// unless it is the start, so every tree path is reduced.
    pub fn reach(&self, start: usize) -> Reach {
        let n = self.granules.len();
        let bot = 0;
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            if u == bot && u != start {
                continue;
            }
            for &w in &self.succ[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        Reach { start, dist, parent }
    }

    fn to_path(&self, idx: &[usize]) -> SubPath {
        let mut gs: Vec<Granule> = idx.iter().map(|&i| self.granules[i].clone()).collect();
        if gs.len() == 1 {
            gs.push(gs[0].clone());
        }
        SubPath(gs)
    }

    /// Shortest reduced subsumption path from `from` to `to`.
    pub fn sub_star(&self, from: &Granule, to: &Granule) -> Option<SubPath> {
        let a = self.index_of(from)?;
        let b = self.index_of(to)?;
        let r = self.reach(a);
        r.tree_path(b).map(|p| self.to_path(&p))
    }

    /// Granules reachable from `from` (including itself).
    pub fn up_set(&self, from: &Granule) -> Vec<&Granule> {
        let Some(a) = self.index_of(from) else { return Vec::new() };
        let r = self.reach(a);
        (0..self.granules.len()).filter(|&v| r.reaches(v)).map(|v| &self.granules[v]).collect()
    }

    /// Paths from `g1` and `g2` into the ends of a disjointness edge, of least
    /// total length.
    pub fn find_protector(&self, g1: &Granule, g2: &Granule) -> Option<Protector> {
        let r1 = self.reach(self.index_of(g1)?);
        let r2 = self.reach(self.index_of(g2)?);
        let mut best: Option<(u32, usize, usize, usize, usize)> = None;
        for (a, b) in self.d_edge_indices() {
            for (x, y) in [(a, b), (b, a)] {
                if let (Some(d1), Some(d2)) = (r1.dist(x), r2.dist(y)) {
                    let cand = (d1 + d2, a, b, x, y);
                    if best.is_none_or(|cur| cand < cur) {
                        best = Some(cand);
                    }
                }
            }
        }
        let (_, _, _, x, y) = best?;
        Some(Protector {
            first: self.to_path(&r1.tree_path(x)?),
            second: self.to_path(&r2.tree_path(y)?),
        })
    }

    fn witness_from(&self, v: usize) -> Option<(u32, SelfDisjointness)> {
        let r = self.reach(v);
        let bot = 0;
        let mut best: Option<(u32, usize, usize)> = None;
        for (a, b) in self.d_edge_indices() {
            if a == bot && b == bot {
                continue;
            }
            if let (Some(d1), Some(d2)) = (r.dist(a), r.dist(b)) {
                let cand = (d1 + d2, a, b);
                if best.is_none_or(|cur| cand < cur) {
                    best = Some(cand);
                }
            }
        }
        let (cost, a, b) = best?;
        let p1 = r.tree_path(a)?;
        let p2 = r.tree_path(b)?;
        // both are paths of one search tree, so they share exactly a prefix
        let shared = p1.iter().zip(&p2).take_while(|(x, y)| x == y).count();
        let start = p1[shared - 1];
        Some((
            cost,
            SelfDisjointness {
                granule: self.granules[v].clone(),
                start: self.granules[start].clone(),
                protector: Protector {
                    first: self.to_path(&p1[shared - 1..]),
                    second: self.to_path(&p2[shared - 1..]),
                },
            },
        ))
    }

    /// Evidence that the positive constraints force `g` (not bottom) empty.
    pub fn self_disjoint_witness(&self, g: &Granule) -> Option<SelfDisjointness> {
        if g.is_bottom() {
            return None;
        }
        self.witness_from(self.index_of(g)?).map(|(_, w)| w)
    }

    /// The cheapest self-disjointness witness over all granules other than
    /// bottom, if the positive constraints are unsatisfiable.
    pub fn unsat_witness(&self) -> Option<SelfDisjointness> {
        (1..self.granules.len())
            .filter_map(|v| self.witness_from(v))
            .min_by_key(|(cost, _)| *cost)
            .map(|(_, w)| w)
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.unsat_witness().is_some()
    }

    /// Graphviz rendering: declared edges in black, tautology edges in gray.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph smas {\n");
        for (i, gr) in self.granules.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{gr}\"];");
        }
        for (a, adj) in self.succ.iter().enumerate() {
            for &b in adj {
                let c = Constraint::sub(self.granules[a].clone(), self.granules[b].clone());
                let style = if self.declared.contains(&c) { "" } else { " color=gray" };
                let _ = writeln!(out, "  n{a} -> n{b} [style=solid{style}];");
            }
        }
        for (a, b) in self.d_edge_indices() {
            let c = Constraint::disj(self.granules[a].clone(), self.granules[b].clone());
            let style = if self.declared.contains(&c) { "" } else { " color=gray" };
            let _ = writeln!(out, "  n{a} -> n{b} [style=dashed dir=none{style}];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::g;

    fn path(names: &[&str]) -> SubPath {
        SubPath::new(names.iter().map(|n| g(n)).collect())
    }

    fn chain(names: &[&str]) -> Vec<Constraint> {
        names.windows(2).map(|w| Constraint::sub(g(w[0]), g(w[1]))).collect()
    }

    #[test]
    fn tautology_edges_are_present() {
        let s = Schema::new([g("g1"), g("g2")], [Constraint::sub(g("g1"), g("g2"))]).unwrap();
        let gr = SmasGraph::build(&s);
        assert!(gr.has_s_edge(&g("g1"), &g("g2")));
        assert!(gr.has_s_edge(&g("g1"), &g("g1")));
        assert!(gr.has_s_edge(&g("bot"), &g("g2")));
        assert!(gr.has_s_edge(&g("g2"), &g("top")));
        assert!(!gr.has_s_edge(&g("g2"), &g("g1")));
    }

    #[test]
    fn d_edges_of_empty_schema() {
        let s = Schema::new([g("g1")], []).unwrap();
        let gr = SmasGraph::build(&s);
        let edges: Vec<(String, String)> =
            gr.d_edges().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(
            edges,
            vec![("bot".into(), "bot".into()), ("bot".into(), "top".into()), ("bot".into(), "g1".into())]
        );
    }

    #[test]
    fn negatives_ignored() {
        let s1 = Schema::new([g("g1"), g("g2")], [Constraint::sub(g("g1"), g("g2")).negate()]).unwrap();
        let s2 = Schema::new([g("g1"), g("g2")], []).unwrap();
        let (a, b) = (SmasGraph::build(&s1), SmasGraph::build(&s2));
        assert!(a.s_edges().eq(b.s_edges()));
        assert!(a.d_edges().eq(b.d_edges()));
    }

    #[test]
    fn chain_path() {
        let s = Schema::from_constraints(chain(&["g1", "g2", "g3", "g4", "g5"]));
        let gr = SmasGraph::build(&s);
        assert_eq!(gr.sub_star(&g("g1"), &g("g5")), Some(path(&["g1", "g2", "g3", "g4", "g5"])));
        assert_eq!(gr.sub_star(&g("g3"), &g("g3")), Some(path(&["g3", "g3"])));
        assert_eq!(gr.sub_star(&g("g5"), &g("g1")), None);
    }

    #[test]
    fn cyclic_path_is_reduced() {
        let mut cs = chain(&["g1", "g2", "g3", "g2"]);
        cs.push(Constraint::sub(g("g3"), g("g4")));
        let gr = SmasGraph::build(&Schema::from_constraints(cs));
        assert_eq!(gr.sub_star(&g("g1"), &g("g4")), Some(path(&["g1", "g2", "g3", "g4"])));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            path(&["g1", "g2", "g3", "g2", "g3", "g4"]).reduce(),
            path(&["g1", "g2", "g3", "g4"])
        );
        assert_eq!(path(&["g1", "g2"]).reduce(), path(&["g1", "g2"]));
        assert_eq!(path(&["g", "x", "g"]).reduce(), path(&["g", "g"]));
        assert_eq!(path(&["bot", "g1", "g2"]).reduce(), path(&["bot", "g2"]));
        assert!(!path(&["g1", "g2", "g1", "g3"]).is_reduced());
        assert!(path(&["g1", "bot"]).is_reduced());
    }

    #[test]
    fn protector_of_two_chains() {
        let mut cs = chain(&["g1", "g2", "g3", "g4"]);
        cs.extend(chain(&["g5", "g6", "g7", "g8"]));
        cs.push(Constraint::disj(g("g4"), g("g8")));
        let gr = SmasGraph::build(&Schema::from_constraints(cs));
        let p = gr.find_protector(&g("g1"), &g("g5")).unwrap();
        assert_eq!(p.first, path(&["g1", "g2", "g3", "g4"]));
        assert_eq!(p.second, path(&["g5", "g6", "g7", "g8"]));
    }

    #[test]
    fn bottom_is_self_protected() {
        let gr = SmasGraph::build(&Schema::new([g("g1")], []).unwrap());
        let p = gr.find_protector(&g("bot"), &g("g1")).unwrap();
        assert!(p.first.is_trivial() && p.second.is_trivial());
        assert_eq!(p.pair(), (&g("bot"), &g("g1")));
    }

    #[test]
    fn unprotected_pair() {
        let gr = SmasGraph::build(&Schema::from_constraints([Constraint::sub(g("g1"), g("g2"))]));
        assert_eq!(gr.find_protector(&g("g1"), &g("g2")), None);
        assert!(!gr.is_unsatisfiable());
        assert_eq!(gr.self_disjoint_witness(&g("g1")), None);
    }

    #[test]
    fn witness_is_trimmed() {
        let mut cs = chain(&["g1", "g2", "g3", "g4"]);
        cs.extend(chain(&["g1", "g5", "g6", "g7"]));
        cs.push(Constraint::disj(g("g4"), g("g7")));
        let gr = SmasGraph::build(&Schema::from_constraints(cs));
        let w = gr.self_disjoint_witness(&g("g1")).unwrap();
        assert_eq!(w.start, g("g1"));
        assert_eq!(w.protector.first, path(&["g1", "g2", "g3", "g4"]));
        assert_eq!(w.protector.second, path(&["g1", "g5", "g6", "g7"]));

        // shared prefix g0 -> g1 is cut away
        let mut cs = chain(&["g0", "g1", "g2"]);
        cs.push(Constraint::sub(g("g1"), g("g3")));
        cs.push(Constraint::disj(g("g2"), g("g3")));
        let gr = SmasGraph::build(&Schema::from_constraints(cs));
        let w = gr.self_disjoint_witness(&g("g0")).unwrap();
        assert_eq!(w.start, g("g1"));
        assert_eq!(w.protector.first, path(&["g1", "g2"]));
        assert_eq!(w.protector.second, path(&["g1", "g3"]));
    }

    #[test]
    fn witness_through_bottom() {
        let gr = SmasGraph::build(&Schema::from_constraints([Constraint::sub(g("g"), g("bot"))]));
        let w = gr.self_disjoint_witness(&g("g")).unwrap();
        assert_eq!(w.protector.first, path(&["g", "bot"]));
        assert_eq!(w.protector.second, path(&["g", "g"]));
    }
}
