//! Exact recovery of a halfspace from membership queries.
//!
//! The learner labels a hull set, binary-searches a shortest path between a
//! positive and a negative vertex for a cut edge `(u, v)`, labels one vertex
//! per component of the complement of `G[△_uv]`, and assembles the target as
//! a union of shadows `z/v`.

use super::{LearnError, LearnerTranscript};
use crate::convexity::hull_set_greedy;
use crate::graph::{clique_number, complement_induced, shortest_path, Graph};
use crate::shadow::{is_halfspace, triangle_set, Halfspace, ShadowTable};
use crate::vertex_set::VertexSet;

/// Answers membership queries `v ∈ H?`.
pub trait QueryOracle {
    fn answer(&mut self, v: usize) -> bool;
    /// Calls to [`QueryOracle::answer`] so far.
    fn queries(&self) -> usize;
}

/// Oracle backed by a fixed target set.
#[derive(Clone, Debug)]
pub struct TargetOracle {
    target: VertexSet,
    queries: usize,
}

impl TargetOracle {
    pub fn new(target: VertexSet) -> Self {
        Self { target, queries: 0 }
    }
}

impl QueryOracle for TargetOracle {
    fn answer(&mut self, v: usize) -> bool {
        self.queries += 1;
        self.target.contains(v)
    }

    fn queries(&self) -> usize {
        self.queries
    }
}

#[derive(Clone, Debug)]
pub struct ActiveOutcome {
    pub halfspace: Halfspace,
    pub queries: usize,
    pub transcript: LearnerTranscript,
}

struct Session<'o, O> {
    oracle: &'o mut O,
    known: Vec<Option<bool>>,
    transcript: LearnerTranscript,
}

impl<O: QueryOracle> Session<'_, O> {
    fn label(&mut self, v: usize) -> bool {
        if let Some(l) = self.known[v] {
            return l;
        }
        let l = self.oracle.answer(v);
        self.known[v] = Some(l);
        self.transcript.record_query(v, l);
        l
    }
}

/// `|hull set| + ⌈log₂ diam⌉ + ω`, the query budget [`active_learn`] stays within.
pub fn active_query_bound(g: &Graph) -> usize {
    let diam = g.diameter();
    let log = if diam <= 1 { 0 } else { (usize::BITS - (diam - 1).leading_zeros()) as usize };
    hull_set_greedy(g).len() + log + clique_number(g)
}

/// Learns the halfspace behind `oracle`. Vertices are never queried twice.
pub fn active_learn<O: QueryOracle>(g: &Graph, oracle: &mut O) -> Result<ActiveOutcome, LearnError> {
    let mut s = Session { oracle, known: vec![None; g.n()], transcript: LearnerTranscript::default() };

    let hull_set = hull_set_greedy(g);
    let (mut pos, mut neg) = (None, None);
    for x in &hull_set {
        let slot = if s.label(x) { &mut pos } else { &mut neg };
        slot.get_or_insert(x);
    }
    let (p, q) = match (pos, neg) {
        (Some(p), Some(q)) => (p, q),
        (Some(_), None) => return finish(g, s, g.vertices()),
        _ => return finish(g, s, g.empty_set()),
    };

    // Labels along a shortest (hence induced) path switch exactly once.
    let path = shortest_path(g, p, q).expect("connected graph");
    let (mut lo, mut hi) = (0, path.len() - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if s.label(path[mid]) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (u, v) = (path[lo], path[hi]);

    let tri = triangle_set(g, u, v).expect("path edge");
    let parts = complement_induced(g, &tri).bipartition().ok_or(LearnError::OracleNotRealizable { vertex: u })?;
    let mut inside = g.empty_set();
    for (own, other) in &parts {
        let members = own.union(other);
        let rep = members.iter().find(|&x| s.known[x].is_some()).unwrap_or_else(|| members.first().unwrap());
        let rep_in = s.label(rep);
        // Vertices nonadjacent in G sit on opposite sides of the cut.
        let rep_side_is_own = own.contains(rep);
        inside.union_with(if rep_in == rep_side_is_own { own } else { other });
    }
    if inside.contains(v) {
        return Err(LearnError::OracleNotRealizable { vertex: v });
    }
    let h = ShadowTable::new(g).union_towards(&inside, v).expect("inside ⊆ N[v]");
    finish(g, s, h)
}

fn finish<O: QueryOracle>(g: &Graph, s: Session<'_, O>, h: VertexSet) -> Result<ActiveOutcome, LearnError> {
    if let Some(vertex) = (0..g.n()).find(|&x| s.known[x].is_some_and(|l| l != h.contains(x))) {
        return Err(LearnError::OracleNotRealizable { vertex });
    }
    if !is_halfspace(g, &h) {
        return Err(LearnError::OracleNotRealizable { vertex: h.first().unwrap_or(0) });
    }
    Ok(ActiveOutcome { halfspace: Halfspace::new_unchecked(h), queries: s.transcript.queries, transcript: s.transcript })
}
