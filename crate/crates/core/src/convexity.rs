//! Monophonic convexity: membership test, convex hull and hull sets.
//!
//! A set `X` is m-convex iff, for every connected component `C` of `G - X`,
//! the vertices of `X` adjacent to `C` form a clique. If two nonadjacent
//! `a, b ∈ X` both touch `C`, a shortest `a`–`b` path through `C` is induced
//! and leaves `X`; conversely an induced path leaving and re-entering `X`
//! gives such a pair. The hull is grown by adding interiors of exactly those
//! paths until no violating component remains.

use std::collections::VecDeque;

use crate::graph::{components, is_clique, Graph};
use crate::vertex_set::VertexSet;

/// `N(C) ∩ X` for a component `C` of `G - X`.
fn attachment(g: &Graph, comp: &VertexSet, x: &VertexSet) -> VertexSet {
    let mut out = g.empty_set();
    for c in comp {
        out.union_with(g.neighbor_set(c));
    }
    out.intersect_with(x);
    out
}

fn nonadjacent_pair(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    for a in s {
        let mut others = s.difference(g.neighbor_set(a));
        others.remove(a);
        if let Some(b) = others.first() {
            return Some((a, b));
        }
    }
    None
}

pub fn is_mconvex(g: &Graph, x: &VertexSet) -> bool {
    components(g, &x.complement()).iter().all(|c| is_clique(g, &attachment(g, c, x)))
}

/// Interior of a shortest `a`–`b` path whose interior lies in `comp`.
fn interior_through(g: &Graph, comp: &VertexSet, a: usize, b: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    parent[a] = a;
    for &y in g.neighbors(a) {
        if comp.contains(y) {
            parent[y] = a;
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if g.has_edge(x, b) {
            let mut path = vec![x];
            let mut cur = x;
            while parent[cur] != a {
                cur = parent[cur];
                path.push(cur);
            }
            return path;
        }
        for &y in g.neighbors(x) {
            if comp.contains(y) && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("both endpoints are attached to the component")
}

/// Smallest m-convex superset of `x`.
pub fn mhull(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut hull = x.clone();
    loop {
        let mut grew = false;
        for comp in components(g, &hull.complement()) {
            let att = attachment(g, &comp, &hull);
            if let Some((a, b)) = nonadjacent_pair(g, &att) {
                for v in interior_through(g, &comp, a, b) {
                    hull.insert(v);
                }
                grew = true;
            }
        }
        if !grew {
            return hull;
        }
    }
}

/// Vertices whose neighborhood is a clique; they lie in every hull set.
pub fn simplicial_vertices(g: &Graph) -> VertexSet {
    g.set_of((0..g.n()).filter(|&v| is_clique(g, g.neighbor_set(v))))
}

/// A hull set built greedily: all simplicial vertices, then repeatedly the
/// lowest-identifier vertex maximizing hull growth. Not necessarily minimum.
pub fn hull_set_greedy(g: &Graph) -> VertexSet {
    let mut set = simplicial_vertices(g);
    let mut hull = mhull(g, &set);
    while !hull.is_full() {
        let mut best: Option<(usize, VertexSet)> = None;
        for v in hull.complement().iter() {
            let mut trial = set.clone();
            trial.insert(v);
            let h = mhull(g, &trial);
            if best.as_ref().is_none_or(|(_, b)| h.len() > b.len()) {
                best = Some((v, h));
            }
        }
        let (v, h) = best.expect("hull is not yet V");
        set.insert(v);
        hull = h;
    }
    set
}
