//! Consistency checking: find a monophonic halfspace agreeing with a labeled
//! sample, or prove none exists.
//!
//! For each orientation `(u, v)` of each edge a 2-SAT formula is built whose
//! models are exactly the halfspaces `H` with `u ∈ H`, `v ∉ H`. Sample labels
//! are added as unit clauses. Trivial halfspaces (`∅`, `V`) have an empty cut
//! and are tested first.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convexity::mhull;
use crate::graph::Graph;
use crate::shadow::Halfspace;
use crate::twosat::{ClauseOrigin, Formula2, Lit};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("sample vertex {0} is not a vertex of the graph")]
    VertexOutOfRange(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
}

/// A multiset of `(vertex, label)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub entries: Vec<(usize, bool)>,
}

impl LabeledSample {
    pub fn new(entries: Vec<(usize, bool)>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, v: usize, label: bool) {
        self.entries.push((v, label));
    }

    pub fn validate(&self, g: &Graph) -> Result<(), CheckError> {
        match self.entries.iter().find(|&&(v, _)| v >= g.n()) {
            Some(&(v, _)) => Err(CheckError::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }

    /// `(y⁻¹(1), y⁻¹(0))` as sets over `0..n`.
    pub fn split(&self, n: usize) -> (VertexSet, VertexSet) {
        let mut pos = VertexSet::empty(n);
        let mut neg = VertexSet::empty(n);
        for &(v, l) in &self.entries {
            if l { &mut pos } else { &mut neg }.insert(v);
        }
        (pos, neg)
    }

    /// Whether some vertex carries both labels.
    pub fn is_contradictory(&self, n: usize) -> bool {
        let (pos, neg) = self.split(n);
        !pos.is_disjoint(&neg)
    }

    /// Number of entries `h` mislabels.
    pub fn mistakes(&self, h: &VertexSet) -> usize {
        self.entries.iter().filter(|&&(v, l)| h.contains(v) != l).count()
    }

    pub fn is_consistent_with(&self, h: &VertexSet) -> bool {
        self.mistakes(h) == 0
    }
}

/// The vertex sets the formula for the oriented edge `(u, v)` is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSets {
    /// `N(u) ∩ N(v)`.
    pub tri_minus: VertexSet,
    /// Vertices on a 4-cycle through the edge `uv` (not necessarily induced).
    pub square: VertexSet,
    /// `square \ tri_minus`.
    pub a_set: VertexSet,
    /// Members of `a_set` strictly closer to `u`.
    pub a_u: VertexSet,
    pub a_v: VertexSet,
    /// Components of `G` minus the edges inside `square ∪ tri_minus`.
    pub t_components: Vec<VertexSet>,
}

pub fn candidate_sets(g: &Graph, u: usize, v: usize) -> Result<CandidateSets, CheckError> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(CheckError::VertexOutOfRange(x));
        }
    }
    if !g.has_edge(u, v) {
        return Err(CheckError::NotAnEdge(u, v));
    }
    let tri_minus = g.neighbor_set(u).intersection(g.neighbor_set(v));
    let mut square = g.set_of([u, v]);
    for &a in g.neighbors(u) {
        if a == v {
            continue;
        }
        for &b in g.neighbors(v) {
            if b != u && b != a && g.has_edge(a, b) {
                square.insert(a);
                square.insert(b);
            }
        }
    }
    let a_set = square.difference(&tri_minus);
    let du = g.bfs_distances(u);
    let dv = g.bfs_distances(v);
    let a_u = g.set_of(a_set.iter().filter(|&x| du[x] < dv[x]));
    let a_v = a_set.difference(&a_u);
    let t_components = components_without_inner_edges(g, &square.union(&tri_minus));
    Ok(CandidateSets { tri_minus, square, a_set, a_u, a_v, t_components })
}

/// Components of `G` after deleting every edge with both ends in `w`.
fn components_without_inner_edges(g: &Graph, w: &VertexSet) -> Vec<VertexSet> {
    let mut seen = g.empty_set();
    let mut out = Vec::new();
    for start in 0..g.n() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = g.set_of([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if w.contains(x) && w.contains(y) {
                    continue;
                }
                if seen.insert(y) {
                    comp.insert(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// The nine structural constraint families for the oriented edge `(u, v)`.
/// Models are exactly the halfspaces `H` with `u ∈ H` and `v ∉ H`.
pub fn structural_formula(g: &Graph, u: usize, v: usize) -> Result<Formula2, CheckError> {
    let sets = candidate_sets(g, u, v)?;
    let tri = &sets.tri_minus;
    let mut f = Formula2::new(g.n());

    // Nonadjacent pairs of common neighbors take opposite sides.
    let tv = tri.to_vec();
    for (i, &x) in tv.iter().enumerate() {
        for &y in &tv[i + 1..] {
            if !g.has_edge(x, y) {
                f.add(Lit::pos(x), Lit::pos(y), ClauseOrigin::Triangle);
                f.add(Lit::neg(x), Lit::neg(y), ClauseOrigin::Triangle);
            }
        }
    }

    let conv_u = mhull(g, &sets.a_u);
    let conv_v = mhull(g, &sets.a_v);
    for x in &conv_u {
        f.add_unit(Lit::pos(x), ClauseOrigin::Conv);
    }
    for x in &conv_v {
        f.add_unit(Lit::neg(x), ClauseOrigin::Conv);
    }

    // Each component of T lies on one side; star-encoded through its minimum.
    for comp in &sets.t_components {
        let rep = comp.first().expect("components are nonempty");
        for x in comp.iter().skip(1) {
            f.add_equiv(x, rep, ClauseOrigin::Components);
        }
    }

    // Induced paths from A^u (resp. A^v) ending in tri_minus.
    for (side, positive, o3, o4) in [
        (&sets.a_u, true, ClauseOrigin::PathU3, ClauseOrigin::PathU4),
        (&sets.a_v, false, ClauseOrigin::PathV3, ClauseOrigin::PathV4),
    ] {
        // (y ∈ H ∨ z ∉ H) on the u side, (y ∉ H ∨ z ∈ H) on the v side.
        let clause = |y: usize, z: usize| {
            if positive {
                (Lit::pos(y), Lit::neg(z))
            } else {
                (Lit::neg(y), Lit::pos(z))
            }
        };
        for x in side {
            let nx = g.neighbor_set(x);
            let far_from_x = tri.difference(nx);
            for &y in g.neighbors(x) {
                let mut ends = far_from_x.intersection(g.neighbor_set(y));
                ends.remove(x);
                for z in &ends {
                    let (a, b) = clause(y, z);
                    f.add(a, b, o3);
                }
            }
            for &w in g.neighbors(x) {
                let nw = g.neighbor_set(w);
                for &y in g.neighbors(w) {
                    if y == x || nx.contains(y) {
                        continue;
                    }
                    let mut ends = far_from_x.intersection(g.neighbor_set(y));
                    ends.difference_with(nw);
                    ends.remove(x);
                    ends.remove(w);
                    for z in &ends {
                        let (a, b) = clause(y, z);
                        f.add(a, b, o4);
                    }
                }
            }
        }
    }

    // Border constraints: an edge leaving conv(A^u) forbids any common
    // neighbor nonadjacent to its inner end from joining H.
    for (hull, positive, origin) in
        [(&conv_u, true, ClauseOrigin::BorderU), (&conv_v, false, ClauseOrigin::BorderV)]
    {
        for x in hull {
            let mut far = tri.difference(g.neighbor_set(x));
            far.remove(x);
            for &y in g.neighbors(x) {
                for z in &far {
                    if positive {
                        f.add(Lit::pos(y), Lit::neg(z), origin);
                    } else {
                        f.add(Lit::neg(y), Lit::pos(z), origin);
                    }
                }
            }
        }
    }
    Ok(f)
}

fn add_sample_units(f: &mut Formula2, pos: &VertexSet, neg: &VertexSet) {
    for x in pos {
        f.add_unit(Lit::pos(x), ClauseOrigin::Sample);
    }
    for x in neg {
        f.add_unit(Lit::neg(x), ClauseOrigin::Sample);
    }
}

/// Structural families plus one unit clause per labeled sample vertex.
pub fn build_formula(g: &Graph, u: usize, v: usize, sample: &LabeledSample) -> Result<Formula2, CheckError> {
    sample.validate(g)?;
    let mut f = structural_formula(g, u, v)?;
    let (pos, neg) = sample.split(g.n());
    add_sample_units(&mut f, &pos, &neg);
    Ok(f)
}

/// Reusable checker that caches the structural formula of each oriented edge.
/// Shareable across threads.
pub struct ConsistencyChecker<'g> {
    graph: &'g Graph,
    formulas: Vec<OnceLock<Formula2>>,
    calls: AtomicUsize,
}

impl<'g> ConsistencyChecker<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph, formulas: (0..2 * graph.m()).map(|_| OnceLock::new()).collect(), calls: AtomicUsize::new(0) }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Number of consistency checks performed so far.
    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    /// Cached structural formula of the oriented edge `(u, v)`.
    pub fn formula(&self, u: usize, v: usize) -> Result<&Formula2, CheckError> {
        let id = self.graph.oriented_edge_id(u, v).ok_or(CheckError::NotAnEdge(u, v))?;
        Ok(self.formulas[id].get_or_init(|| structural_formula(self.graph, u, v).expect("edge checked")))
    }

    pub fn check(&self, sample: &LabeledSample) -> Result<Option<Halfspace>, CheckError> {
        sample.validate(self.graph)?;
        let (pos, neg) = sample.split(self.graph.n());
        Ok(self.check_sets(&pos, &neg))
    }

    /// Finds a halfspace containing `pos` and disjoint from `neg`.
    pub fn check_sets(&self, pos: &VertexSet, neg: &VertexSet) -> Option<Halfspace> {
        self.check_sets_traced(pos, neg, |_, _, _| {})
    }

    /// As [`ConsistencyChecker::check_sets`], calling `trace(u, v, formula)`
    /// for every formula handed to the solver.
    pub fn check_sets_traced(
        &self,
        pos: &VertexSet,
        neg: &VertexSet,
        mut trace: impl FnMut(usize, usize, &Formula2),
    ) -> Option<Halfspace> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let g = self.graph;
        if !pos.is_disjoint(neg) {
            return None;
        }
        if neg.is_empty() {
            return Some(Halfspace::new_unchecked(g.vertices()));
        }
        if pos.is_empty() {
            return Some(Halfspace::new_unchecked(g.empty_set()));
        }
        for (u, v) in g.oriented_edges() {
            // Units on u and v are part of the formula; skip hopeless edges early.
            if neg.contains(u) || pos.contains(v) {
                continue;
            }
            let mut f = self.formula(u, v).expect("oriented edge").clone();
            add_sample_units(&mut f, pos, neg);
            trace(u, v, &f);
            if let Some(h) = f.solve() {
                debug_assert!(crate::shadow::is_halfspace(g, &h), "2-SAT model is not a halfspace");
                return Some(Halfspace::new_unchecked(h));
            }
        }
        None
    }
}

/// A halfspace consistent with `sample`, or `None` if no halfspace is.
pub fn mh_check(g: &Graph, sample: &LabeledSample) -> Result<Option<Halfspace>, CheckError> {
    ConsistencyChecker::new(g).check(sample)
}

/// A halfspace `∅ ⊊ H ⊊ V`, if one exists.
///
/// Any such `H` has a cut edge `uv` with `u ∈ H`, so checking the samples
/// `{u ↦ 1, v ↦ 0}` over the edges suffices.
pub fn has_nontrivial_halfspace(g: &Graph) -> Option<Halfspace> {
    let checker = ConsistencyChecker::new(g);
    g.edges().iter().find_map(|&(u, v)| checker.check_sets(&g.set_of([u]), &g.set_of([v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn models(f: &Formula2) -> Vec<VertexSet> {
        let n = f.num_vars();
        (0u64..1 << n).map(|m| VertexSet::from_mask(n, m)).filter(|a| f.holds(a)).collect()
    }

    #[test]
    fn candidate_sets_k4() {
        let k4 = fixtures::complete(4);
        let s = candidate_sets(&k4, 0, 1).unwrap();
        assert_eq!(s.tri_minus, k4.set_of([2, 3]));
        assert_eq!(s.square, k4.vertices());
        assert_eq!(s.a_u, k4.set_of([0]));
        assert_eq!(s.a_v, k4.set_of([1]));
        assert_eq!(s.t_components.len(), 4);
    }

    #[test]
    fn candidate_sets_p4_and_c5() {
        let p4 = fixtures::path(4);
        let s = candidate_sets(&p4, 1, 2).unwrap();
        assert!(s.tri_minus.is_empty());
        assert_eq!(s.square, p4.set_of([1, 2]));
        assert_eq!((s.a_u.clone(), s.a_v.clone()), (p4.set_of([1]), p4.set_of([2])));
        assert_eq!(s.t_components, vec![p4.set_of([0, 1]), p4.set_of([2, 3])]);

        let c5 = fixtures::cycle(5);
        let s = candidate_sets(&c5, 0, 1).unwrap();
        assert!(s.tri_minus.is_empty());
        assert_eq!(s.square, c5.set_of([0, 1]));
        assert_eq!(s.t_components, vec![c5.vertices()]);
        assert_eq!(candidate_sets(&c5, 0, 2), Err(CheckError::NotAnEdge(0, 2)));
    }

    #[test]
    fn formula_models() {
        let p4 = fixtures::path(4);
        let f = build_formula(&p4, 1, 2, &LabeledSample::default()).unwrap();
        // {1} alone is not a halfspace: 0-1-2 re-enters the complement.
        assert_eq!(models(&f), vec![p4.set_of([0, 1])]);

        let k3 = fixtures::complete(3);
        let f = build_formula(&k3, 0, 1, &LabeledSample::default()).unwrap();
        assert_eq!(models(&f), vec![k3.set_of([0]), k3.set_of([0, 2])]);

        let c5 = fixtures::cycle(5);
        assert!(build_formula(&c5, 0, 1, &LabeledSample::default()).unwrap().solve().is_none());
    }

    #[test]
    fn check_examples() {
        let p4 = fixtures::path(4);
        let s = LabeledSample::new(vec![(0, true), (2, false)]);
        let h = mh_check(&p4, &s).unwrap().unwrap();
        assert!([p4.set_of([0]), p4.set_of([0, 1])].contains(h.positive_side()));
        assert_eq!(h.positive_side(), &p4.set_of([0]));

        let c5 = fixtures::cycle(5);
        assert_eq!(mh_check(&c5, &s).unwrap(), None);

        let all_pos = LabeledSample::new(vec![(1, true), (3, true)]);
        assert_eq!(mh_check(&c5, &all_pos).unwrap().unwrap().positive_side(), &c5.vertices());
        let all_neg = LabeledSample::new(vec![(1, false)]);
        assert!(mh_check(&c5, &all_neg).unwrap().unwrap().positive_side().is_empty());

        let contradictory = LabeledSample::new(vec![(1, false), (1, true)]);
        assert_eq!(mh_check(&p4, &contradictory).unwrap(), None);
        assert_eq!(mh_check(&p4, &LabeledSample::new(vec![(7, true)])), Err(CheckError::VertexOutOfRange(7)));
    }

    #[test]
    fn nontrivial_halfspaces() {
        let p4 = fixtures::path(4);
        let w = has_nontrivial_halfspace(&p4).unwrap();
        assert!(!w.is_trivial());
        assert!(has_nontrivial_halfspace(&fixtures::complete(3)).is_some());
        assert!(has_nontrivial_halfspace(&fixtures::cycle(5)).is_none());
    }

    #[test]
    fn dimacs_trace() {
        let p4 = fixtures::path(4);
        let checker = ConsistencyChecker::new(&p4);
        let mut dumps = Vec::new();
        checker.check_sets_traced(&p4.set_of([0]), &p4.set_of([3]), |u, v, f| dumps.push((u, v, f.to_dimacs())));
        assert_eq!(dumps.len(), 1);
        assert!(dumps[0].2.starts_with("p cnf 4 "));
    }
}
