//! Corpus benchmark and corpus export.

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use monohalf::consistency::{mh_check, LabeledSample};
use monohalf::corpus::{random_corpus, to_edge_list, CorpusSpec};
use monohalf::enumeration::list_all_fpt;
use monohalf::graph::clique_number;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

#[derive(Serialize)]
struct Row {
    #[serde(rename = "graph-id")]
    graph_id: String,
    n: usize,
    m: usize,
    omega: usize,
    hm: usize,
    enum_ms: f64,
    check_ms: f64,
}

/// Elapsed milliseconds, rounded to microseconds.
fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Times `list_all_fpt` and `samples` random consistency checks per graph,
/// in parallel across graphs. Returns CSV text in corpus order.
pub fn run(spec: &CorpusSpec, samples: usize, seed: u64) -> Result<String> {
    let corpus = random_corpus(spec);
    let rows: Vec<Row> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let g = &c.graph;
            let t = Instant::now();
            let hm = list_all_fpt(g).len();
            let enum_ms = millis(t);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
            let sets: Vec<LabeledSample> = (0..samples)
                .map(|_| {
                    let k = rng.gen_range(1..=g.n());
                    LabeledSample::new((0..k).map(|_| (rng.gen_range(0..g.n()), rng.gen_bool(0.5))).collect())
                })
                .collect();
            let t = Instant::now();
            for s in &sets {
                mh_check(g, s).expect("sample vertices are in range");
            }
            let check_ms = millis(t);
            Row { graph_id: c.id.clone(), n: g.n(), m: g.m(), omega: clique_number(g), hm, enum_ms, check_ms }
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Writes `<id>.el` per graph and a `manifest.json`; returns the manifest.
pub fn write_corpus(spec: &CorpusSpec, dir: &Path) -> Result<serde_json::Value> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut entries = Vec::new();
    for c in random_corpus(spec) {
        let file = format!("{}.el", c.id);
        fs::write(dir.join(&file), to_edge_list(&c.graph)).with_context(|| format!("writing {file}"))?;
        entries.push(json!({ "id": c.id, "file": file, "n": c.n, "m": c.graph.m(), "p": c.p, "seed": c.seed }));
    }
    let manifest = serde_json::Value::Array(entries);
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}
