//! Edge-anchored m-shadows, halfspace recognition, borders and cuts, and the
//! shadow decompositions used by the enumerators and learners.

use std::sync::OnceLock;

use thiserror::Error;

use crate::graph::{is_clique, Graph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShadowError {
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("({0}, {1}) is not a cut edge with {0} inside the halfspace")]
    NotACutEdge(usize, usize),
    #[error("the halfspace is trivial (empty or the whole vertex set)")]
    Trivial,
    #[error("{0:?} is not a monophonic halfspace")]
    NotAHalfspace(VertexSet),
    #[error("shadow decomposition reproduced {got:?}, expected {expected:?}")]
    Inconsistent { expected: VertexSet, got: VertexSet },
}

/// A monophonic halfspace, identified by its positive side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace(VertexSet);

impl Halfspace {
    /// Wraps `h` after checking both borders are cliques.
    pub fn new(g: &Graph, h: VertexSet) -> Result<Self, ShadowError> {
        if is_halfspace(g, &h) {
            Ok(Self(h))
        } else {
            Err(ShadowError::NotAHalfspace(h))
        }
    }

    pub(crate) fn new_unchecked(h: VertexSet) -> Self {
        Self(h)
    }

    pub fn positive_side(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_set(self) -> VertexSet {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    /// The complementary halfspace `V \ H`.
    pub fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty() || self.0.is_full()
    }
}

/// `z/v` for an edge `{z, v}`: the vertices `x` such that `N(v) \ {z}` does
/// not separate `z` from `x`. Contains `z`, never `v`.
pub fn edge_shadow(g: &Graph, z: usize, v: usize) -> Result<VertexSet, ShadowError> {
    if z >= g.n() || v >= g.n() || !g.has_edge(z, v) {
        return Err(ShadowError::NotAnEdge(z, v));
    }
    let mut blocked = g.neighbor_set(v).clone();
    blocked.remove(z);
    blocked.insert(v);
    Ok(g.reachable_from(z, &blocked))
}

/// `Γ(X)`: members of `x` with a neighbor outside `x`.
pub fn border(g: &Graph, x: &VertexSet) -> VertexSet {
    g.set_of(x.iter().filter(|&v| !g.neighbor_set(v).is_subset(x)))
}

/// `δ(X)` oriented inside-endpoint first, sorted.
pub fn cutset(g: &Graph, x: &VertexSet) -> Vec<(usize, usize)> {
    x.iter()
        .flat_map(|u| g.neighbors(u).iter().filter(|&&v| !x.contains(v)).map(move |&v| (u, v)))
        .collect()
}

/// Both borders are cliques.
pub fn is_halfspace(g: &Graph, h: &VertexSet) -> bool {
    is_clique(g, &border(g, h)) && is_clique(g, &border(g, &h.complement()))
}

/// `△_uv = (N(u) ∩ N(v)) ∪ {u, v}`.
pub fn triangle_set(g: &Graph, u: usize, v: usize) -> Result<VertexSet, ShadowError> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(ShadowError::NotAnEdge(u, v));
    }
    let mut t = g.neighbor_set(u).intersection(g.neighbor_set(v));
    t.insert(u);
    t.insert(v);
    Ok(t)
}

/// Lazily filled table of all `2m` edge shadows, indexed by oriented edge.
/// Safe to share across threads; each entry is computed at most once.
pub struct ShadowTable<'g> {
    graph: &'g Graph,
    cells: Vec<OnceLock<VertexSet>>,
}

impl<'g> ShadowTable<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph, cells: (0..2 * graph.m()).map(|_| OnceLock::new()).collect() }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// `z/v`, computed on first use.
    pub fn get(&self, z: usize, v: usize) -> Result<&VertexSet, ShadowError> {
        let id = self.graph.oriented_edge_id(z, v).ok_or(ShadowError::NotAnEdge(z, v))?;
        Ok(self.cells[id].get_or_init(|| edge_shadow(self.graph, z, v).expect("edge checked")))
    }

    /// `⋃_{z ∈ zs} z/v`.
    pub fn union_towards(&self, zs: &VertexSet, v: usize) -> Result<VertexSet, ShadowError> {
        let mut out = self.graph.empty_set();
        for z in zs {
            out.union_with(self.get(z, v)?);
        }
        Ok(out)
    }
}

fn check_cut_edge(g: &Graph, h: &VertexSet, u: usize, v: usize) -> Result<(), ShadowError> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(ShadowError::NotAnEdge(u, v));
    }
    if !h.contains(u) || h.contains(v) {
        return Err(ShadowError::NotACutEdge(u, v));
    }
    Ok(())
}

/// Rebuilds `h` from a cut edge `(u, v)`, `u ∈ h`, as the union of `z/v` over
/// `z ∈ h ∩ △_uv`. Errors if the union differs from `h`.
pub fn shadow_reconstruct(g: &Graph, h: &Halfspace, u: usize, v: usize) -> Result<VertexSet, ShadowError> {
    shadow_reconstruct_with(&ShadowTable::new(g), h, u, v)
}

pub fn shadow_reconstruct_with(
    shadows: &ShadowTable<'_>,
    h: &Halfspace,
    u: usize,
    v: usize,
) -> Result<VertexSet, ShadowError> {
    let g = shadows.graph();
    let h = h.positive_side();
    check_cut_edge(g, h, u, v)?;
    let anchors = triangle_set(g, u, v)?.intersection(h);
    let got = shadows.union_towards(&anchors, v)?;
    if &got != h {
        return Err(ShadowError::Inconsistent { expected: h.clone(), got });
    }
    Ok(got)
}

/// Oriented cut edges `(z, v)` whose shadows `z/v` cover `h` exactly.
///
/// All edges share the anchor `v` of the smallest cut edge `(u, v)`, and the
/// `z` range over `h ∩ △_uv`. Those vertices sit in `Γ(h)`, which is a
/// clique, so the cover has at most `ω(G)` edges.
pub fn sparse_shadow_cover(g: &Graph, h: &Halfspace) -> Result<Vec<(usize, usize)>, ShadowError> {
    sparse_shadow_cover_with(&ShadowTable::new(g), h)
}

pub fn sparse_shadow_cover_with(
    shadows: &ShadowTable<'_>,
    h: &Halfspace,
) -> Result<Vec<(usize, usize)>, ShadowError> {
    let g = shadows.graph();
    if h.is_trivial() {
        return Err(ShadowError::Trivial);
    }
    let set = h.positive_side();
    let (u, v) = cutset(g, set)[0];
    let anchors = triangle_set(g, u, v)?.intersection(set);
    let cover: Vec<_> = anchors.iter().map(|z| (z, v)).collect();
    let got = shadows.union_towards(&anchors, v)?;
    if &got != set {
        return Err(ShadowError::Inconsistent { expected: set.clone(), got });
    }
    Ok(cover)
}
