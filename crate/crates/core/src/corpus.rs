//! Seeded Erdős–Rényi corpora of connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Draws `G(n, p)` from `seed`; `None` if the draw is disconnected.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).ok()
}

/// Parameters of a random corpus.
#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub sizes: Vec<usize>,
    pub probabilities: Vec<f64>,
    /// Connected graphs kept per `(n, p)` cell.
    pub per_cell: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self { sizes: (4..=10).collect(), probabilities: vec![0.2, 0.4, 0.6], per_cell: 15, seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub id: String,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub graph: Graph,
}

/// Generates `per_cell` connected graphs for each `(n, p)` cell. Disconnected
/// draws are rejected and the per-draw seed advanced, so output is a pure
/// function of the spec.
pub fn random_corpus(spec: &CorpusSpec) -> Vec<CorpusGraph> {
    let mut out = Vec::new();
    for &n in &spec.sizes {
        for (pi, &p) in spec.probabilities.iter().enumerate() {
            let mut draw = 0u64;
            let mut kept = 0;
            while kept < spec.per_cell {
                let seed = spec
                    .seed
                    .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    .wrapping_add((n as u64) << 40 | (pi as u64) << 32 | draw);
                draw += 1;
                if let Some(graph) = erdos_renyi(n, p, seed) {
                    out.push(CorpusGraph { id: format!("er-n{n}-p{p}-{kept}"), n, p, seed, graph });
                    kept += 1;
                }
            }
        }
    }
    out
}

/// Serializes a graph as an edge list using its vertex names.
pub fn to_edge_list(g: &Graph) -> String {
    g.edges().iter().map(|&(u, v)| format!("{} {}\n", g.name(u), g.name(v))).collect()
}
