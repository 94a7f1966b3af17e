//! Immutable simple undirected graphs and the primitive queries the rest of the
//! crate is built on.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("empty input: no edges")]
    Empty,
    #[error("line {line}: expected two vertex names, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: self-loop on vertex {vertex:?}")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge {u:?} {v:?}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("graph is disconnected: vertex {vertex:?} (first seen on line {line}) is unreachable from {root:?}")]
    Disconnected { line: usize, vertex: String, root: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// A simple undirected graph on dense identifiers `0..n`.
///
/// Graphs built through [`load_graph`] or [`Graph::from_edges`] are connected.
/// Derived graphs (see [`complement_induced`]) may not be.
#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<VertexSet>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a connected graph on `0..n` with vertex names `"1"..="n"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let g = Self::build(names, edges.iter().copied().map(|e| (e, 0)))?;
        g.check_connected(&vec![0; n])?;
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] with explicit names.
    pub fn from_named_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = names.len();
        let g = Self::build(names, edges.iter().copied().map(|e| (e, 0)))?;
        g.check_connected(&vec![0; n])?;
        Ok(g)
    }

    /// Builds without the connectivity check.
    fn build(
        names: Vec<String>,
        edges: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut adj = vec![VertexSet::empty(n); n];
        let mut list = Vec::new();
        for ((u, v), line) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: names[u].clone() });
            }
            if !adj[u].insert(v) {
                return Err(GraphError::DuplicateEdge {
                    line,
                    u: names[u].clone(),
                    v: names[v].clone(),
                });
            }
            adj[v].insert(u);
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        let edge_ids = list.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let neighbors = adj.iter().map(VertexSet::to_vec).collect();
        Ok(Self { names, adj, neighbors, edges: list, edge_ids })
    }

    fn check_connected(&self, first_line: &[usize]) -> Result<(), GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        let reach = self.reachable_from(0, &VertexSet::empty(self.n()));
        match reach.complement().first() {
            None => Ok(()),
            Some(v) => Err(GraphError::Disconnected {
                line: first_line[v],
                vertex: self.names[v].clone(),
                root: self.names[0].clone(),
            }),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    /// Index of the oriented edge `(u, v)` in `0..2m`: `2·id` when `u < v`,
    /// `2·id + 1` otherwise.
    pub fn oriented_edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_id(u, v).map(|id| 2 * id + usize::from(u > v))
    }

    /// Both orientations of every edge, in [`Graph::oriented_edge_id`] order.
    pub fn oriented_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)])
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n())
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        VertexSet::from_vertices(self.n(), it)
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Name map as a JSON object `{ "name": id, ... }`.
    pub fn name_map_json(&self) -> serde_json::Value {
        let map: serde_json::Map<_, _> =
            self.names.iter().enumerate().map(|(i, s)| (s.clone(), serde_json::Value::from(i))).collect();
        serde_json::Value::Object(map)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Vertices reachable from `start` in `G - blocked`. `start` itself must
    /// not be blocked.
    pub fn reachable_from(&self, start: usize, blocked: &VertexSet) -> VertexSet {
        let mut seen = blocked.clone();
        let mut out = self.empty_set();
        seen.insert(start);
        out.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.neighbors[x] {
                if seen.insert(y) {
                    out.insert(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap() + 1;
            for &y in &self.neighbors[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Geodesic diameter (longest shortest path, in edges).
    pub fn diameter(&self) -> usize {
        (0..self.n())
            .flat_map(|s| self.bfs_distances(s).into_iter().flatten())
            .max()
            .unwrap_or(0)
    }
}

/// Parses an edge list: one `u v` pair of whitespace-separated names per line.
/// Blank lines and lines starting with `#` are ignored. Identifiers are
/// assigned in order of first appearance.
pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut first_line = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::Malformed { line, found: trimmed.to_string() });
        }
        let mut id = |tok: &str| {
            *ids.entry(tok.to_string()).or_insert_with(|| {
                names.push(tok.to_string());
                first_line.push(line);
                names.len() - 1
            })
        };
        let (u, v) = (id(toks[0]), id(toks[1]));
        edges.push(((u, v), line));
    }
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    let g = Graph::build(names, edges)?;
    g.check_connected(&first_line)?;
    Ok(g)
}

/// Whether every `a`–`b` path (endpoints included) meets `s`.
pub fn is_separator(g: &Graph, s: &VertexSet, a: usize, b: usize) -> Result<bool, GraphError> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if s.contains(a) || s.contains(b) {
        return Ok(true);
    }
    Ok(!g.reachable_from(a, s).contains(b))
}

/// Connected components of `G[x]`, ordered by smallest member.
pub fn components(g: &Graph, x: &VertexSet) -> Vec<VertexSet> {
    let mut left = x.clone();
    let blocked = x.complement();
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let comp = g.reachable_from(start, &blocked);
        left.difference_with(&comp);
        out.push(comp);
    }
    out
}

/// Whether all pairs in `x` are adjacent.
pub fn is_clique(g: &Graph, x: &VertexSet) -> bool {
    x.iter().all(|v| {
        let mut rest = x.clone();
        rest.remove(v);
        rest.is_subset(g.neighbor_set(v))
    })
}

/// The complement of `G[x]`, re-indexed onto `0..|x|`.
#[derive(Clone, Debug)]
pub struct InducedComplement {
    /// `origin[i]` is the vertex of the parent graph behind local vertex `i`.
    pub origin: Vec<usize>,
    pub graph: Graph,
    parent_n: usize,
}

impl InducedComplement {
    /// Connected components, mapped back to parent identifiers.
    pub fn components(&self) -> Vec<VertexSet> {
        let parent_n = self.parent_n;
        components(&self.graph, &self.graph.vertices())
            .into_iter()
            .map(|c| VertexSet::from_vertices(parent_n, c.iter().map(|i| self.origin[i])))
            .collect()
    }

    /// Two-coloring of every component, or `None` if some component has an
    /// odd cycle. Each entry is `(side containing the component's smallest
    /// vertex, the other side)` in parent identifiers, ordered by component.
    pub fn bipartition(&self) -> Option<Vec<(VertexSet, VertexSet)>> {
        let parent_n = self.parent_n;
        let k = self.graph.n();
        let mut color: Vec<Option<bool>> = vec![None; k];
        let mut out = Vec::new();
        for start in 0..k {
            if color[start].is_some() {
                continue;
            }
            let mut sides = (VertexSet::empty(parent_n), VertexSet::empty(parent_n));
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                if cx { &mut sides.1 } else { &mut sides.0 }.insert(self.origin[x]);
                for &y in self.graph.neighbors(x) {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
            out.push(sides);
        }
        Some(out)
    }
}

/// Graph on `x` whose edges are the non-edges of `G[x]`. Local vertex `i`
/// is the `i`-th smallest member of `x`.
pub fn complement_induced(g: &Graph, x: &VertexSet) -> InducedComplement {
    let origin = x.to_vec();
    let names = origin.iter().map(|&v| g.name(v).to_string()).collect();
    let mut edges = Vec::new();
    for (i, &a) in origin.iter().enumerate() {
        for (j, &b) in origin.iter().enumerate().skip(i + 1) {
            if !g.has_edge(a, b) {
                edges.push(((i, j), 0));
            }
        }
    }
    let graph = Graph::build(names, edges).expect("complement of a simple graph is simple");
    InducedComplement { origin, graph, parent_n: g.n() }
}

/// Shortest-path distance in edges.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<usize, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.bfs_distances(u)[v].ok_or(GraphError::VertexOutOfRange(v))
}

/// Lexicographically smallest shortest `u`–`v` path.
pub fn shortest_path(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let to_v = g.bfs_distances(v);
    let mut d = to_v[u].ok_or(GraphError::VertexOutOfRange(u))?;
    let mut path = vec![u];
    let mut cur = u;
    while d > 0 {
        cur = *g.neighbors(cur).iter().find(|&&y| to_v[y] == Some(d - 1)).expect("BFS layer");
        path.push(cur);
        d -= 1;
    }
    Ok(path)
}

/// Exact clique number by branch and bound over bitsets, with greedy-coloring
/// bounds and Tomita-style pivot ordering. Exponential in the worst case.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    let mut current = Vec::new();
    expand(g, g.vertices(), &mut current, &mut best);
    best
}

/// `max(ω(G), 3)`.
pub fn clique_number_tilde(g: &Graph) -> usize {
    clique_number(g).max(3)
}

fn expand(g: &Graph, candidates: VertexSet, current: &mut Vec<usize>, best: &mut usize) {
    if candidates.is_empty() {
        *best = (*best).max(current.len());
        return;
    }
    // Greedy sequential coloring: vertices sorted by color class give an
    // upper bound `current + color` on any clique extending through them.
    let mut order = Vec::with_capacity(candidates.len());
    let mut uncolored = candidates.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbor_set(v));
            uncolored.remove(v);
            order.push((v, color));
        }
    }
    let mut cand = candidates;
    for &(v, c) in order.iter().rev() {
        if current.len() + c <= *best {
            return;
        }
        current.push(v);
        expand(g, cand.intersection(g.neighbor_set(v)), current, best);
        current.pop();
        cand.remove(v);
    }
}
