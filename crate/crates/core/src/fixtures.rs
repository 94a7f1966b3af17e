//! Small named graphs used throughout tests, examples and the CLI.
//! Vertices are named `1..=n`.

use crate::graph::Graph;

/// Path on `n ≥ 2` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path")
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle")
}

/// Complete graph on `n ≥ 2` vertices.
pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).expect("complete")
}

/// Star `K_{1,leaves}`; the center is vertex 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star")
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen")
}

/// The fixture set used by the acceptance suite.
pub fn named() -> Vec<(String, Graph)> {
    vec![
        ("P4".into(), path(4)),
        ("P5".into(), path(5)),
        ("C5".into(), cycle(5)),
        ("K3".into(), complete(3)),
        ("K4".into(), complete(4)),
        ("K1,3".into(), star(3)),
        ("Petersen".into(), petersen()),
    ]
}
