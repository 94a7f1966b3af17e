//! Brute-force reference implementations, written straight from the
//! definitions: intervals from enumerated induced paths, convexity as interval
//! closure, halfspaces by scanning all `2^n` subsets.
//!
//! Everything here is exponential and only meant for small graphs. The
//! expensive entry points refuse inputs above a size guard.

use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest `n` accepted by [`halfspaces_bf`] and the other subset scans.
pub const SUBSET_SCAN_LIMIT: usize = 20;
/// Largest `n` accepted by [`vc_dim_bf`].
pub const VC_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; this oracle is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn guard(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        Err(OracleError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Extends `path` by every neighbor of its last vertex that keeps it induced,
/// calling `visit` on each induced path found (including the start).
fn walk_induced(g: &Graph, path: &mut Vec<usize>, on_path: &mut VertexSet, visit: &mut impl FnMut(&[usize])) {
    visit(path);
    let last = *path.last().expect("nonempty path");
    for &y in g.neighbors(last) {
        if on_path.contains(y) {
            continue;
        }
        // y may only touch `last` among the path vertices.
        if g.neighbor_set(y).intersection_len(on_path) != 1 {
            continue;
        }
        path.push(y);
        on_path.insert(y);
        walk_induced(g, path, on_path, visit);
        on_path.remove(y);
        path.pop();
    }
}

/// All induced `u`–`v` paths, lexicographically sorted.
pub fn induced_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![u];
    let mut on_path = g.set_of([u]);
    walk_induced(g, &mut path, &mut on_path, &mut |p| {
        if *p.last().unwrap() == v {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

/// `I(u, v)`: vertices on some induced `u`–`v` path; `I(u, u) = ∅`.
pub fn interval_bf(g: &Graph, u: usize, v: usize) -> VertexSet {
    let mut out = g.empty_set();
    if u == v {
        return out;
    }
    for w in induced_paths(g, u, v).into_iter().flatten() {
        out.insert(w);
    }
    out
}

/// All intervals `I(u, v)`, computed with one induced-path walk per source.
pub struct IntervalTable {
    n: usize,
    intervals: Vec<VertexSet>,
}

impl IntervalTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut intervals = vec![g.empty_set(); n * n];
        for u in 0..n {
            let mut path = vec![u];
            let mut on_path = g.set_of([u]);
            walk_induced(g, &mut path, &mut on_path, &mut |p| {
                let w = *p.last().unwrap();
                if w != u {
                    for &x in p {
                        intervals[u * n + w].insert(x);
                    }
                }
            });
        }
        Self { n, intervals }
    }

    pub fn get(&self, u: usize, v: usize) -> &VertexSet {
        &self.intervals[u * self.n + v]
    }

    /// `z/v = {x : z ∈ I(x, v)}`.
    pub fn shadow(&self, z: usize, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n, (0..self.n).filter(|&x| self.get(x, v).contains(z)))
    }

    pub fn is_convex(&self, x: &VertexSet) -> bool {
        let members = x.to_vec();
        members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| self.get(a, b).is_subset(x)))
    }

    /// Closes `x` under intervals.
    pub fn hull(&self, x: &VertexSet) -> VertexSet {
        let mut hull = x.clone();
        loop {
            let mut next = hull.clone();
            for a in &hull {
                for b in &hull {
                    if a < b {
                        next.union_with(self.get(a, b));
                    }
                }
            }
            if next == hull {
                return hull;
            }
            hull = next;
        }
    }
}

/// `z/v = {x : z ∈ I(x, v)}`, for any pair of vertices.
pub fn shadow_bf(g: &Graph, z: usize, v: usize) -> VertexSet {
    g.set_of((0..g.n()).filter(|&x| interval_bf(g, x, v).contains(z)))
}

pub fn hull_bf(g: &Graph, x: &VertexSet) -> VertexSet {
    IntervalTable::new(g).hull(x)
}

pub fn mconvex_bf(g: &Graph, x: &VertexSet) -> bool {
    IntervalTable::new(g).is_convex(x)
}

fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(move |m| VertexSet::from_mask(n, m))
}

/// Every monophonic halfspace, sorted.
pub fn halfspaces_bf(g: &Graph) -> Result<Vec<VertexSet>, OracleError> {
    guard(g, SUBSET_SCAN_LIMIT)?;
    let table = IntervalTable::new(g);
    let mut out: Vec<_> = all_subsets(g.n()).filter(|h| table.is_convex(h) && table.is_convex(&h.complement())).collect();
    out.sort();
    Ok(out)
}

/// Halfspaces containing `pos` and avoiding `neg`.
pub fn version_space_bf(g: &Graph, pos: &VertexSet, neg: &VertexSet) -> Result<Vec<VertexSet>, OracleError> {
    Ok(halfspaces_bf(g)?.into_iter().filter(|h| pos.is_subset(h) && h.is_disjoint(neg)).collect())
}

/// A smallest set whose hull is `V`; the first in sorted order among those.
pub fn min_hullset_bf(g: &Graph) -> Result<VertexSet, OracleError> {
    guard(g, SUBSET_SCAN_LIMIT)?;
    let table = IntervalTable::new(g);
    let mut best: Option<VertexSet> = None;
    for s in all_subsets(g.n()) {
        if best.as_ref().is_some_and(|b| s.len() > b.len()) {
            continue;
        }
        if table.hull(&s).is_full() && best.as_ref().is_none_or(|b| s.len() < b.len() || s < *b) {
            best = Some(s);
        }
    }
    Ok(best.expect("V is a hull set"))
}

/// VC dimension of the halfspace class, by checking which vertex sets are
/// shattered.
pub fn vc_dim_bf(g: &Graph) -> Result<usize, OracleError> {
    guard(g, VC_LIMIT)?;
    let masks: Vec<u64> = halfspaces_bf(g)?.iter().map(VertexSet::to_mask).collect();
    let shattered = |s: u64| {
        let mut traces: Vec<u64> = masks.iter().map(|h| h & s).collect();
        traces.sort_unstable();
        traces.dedup();
        traces.len() == 1 << s.count_ones()
    };
    // Shattering is closed under subsets, so sizes can be swept upward.
    let mut best = 0;
    for k in 1..=g.n() {
        if (0u64..1 << g.n()).any(|s| s.count_ones() as usize == k && shattered(s)) {
            best = k;
        } else {
            break;
        }
    }
    Ok(best)
}

/// `{u, v}` together with every `x, y` forming a 4-cycle `u x y v`.
pub fn four_cycles_bf(g: &Graph, u: usize, v: usize) -> VertexSet {
    let mut out = g.set_of([u, v]);
    for x in 0..g.n() {
        for y in 0..g.n() {
            let distinct = x != y && ![u, v].contains(&x) && ![u, v].contains(&y);
            if distinct && g.has_edge(u, x) && g.has_edge(x, y) && g.has_edge(y, v) {
                out.insert(x);
                out.insert(y);
            }
        }
    }
    out
}

/// The halfspaces `H` with `u ∈ H`, `v ∉ H`, for an edge `uv`.
pub fn constraint_semantics_bf(g: &Graph, u: usize, v: usize) -> Result<Vec<VertexSet>, OracleError> {
    Ok(halfspaces_bf(g)?.into_iter().filter(|h| h.contains(u) && !h.contains(v)).collect())
}

/// Number of edges on a longest induced path.
pub fn monophonic_diameter_bf(g: &Graph) -> usize {
    let mut best = 0;
    for u in 0..g.n() {
        let mut path = vec![u];
        let mut on_path = g.set_of([u]);
        walk_induced(g, &mut path, &mut on_path, &mut |p| best = best.max(p.len() - 1));
    }
    best
}
