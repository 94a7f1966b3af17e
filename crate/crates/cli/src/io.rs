//! File formats: edge lists, label files, vertex lists, and set printing.

use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use monohalf::{load_graph, Graph, LabeledSample, VertexSet};

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading graph {}", path.display()))?;
    load_graph(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn vertex(g: &Graph, name: &str) -> Result<usize> {
    g.vertex_by_name(name).with_context(|| format!("unknown vertex {name:?}"))
}

/// Lines `vertexname label` with label `0` or `1`. Blank lines and `#`
/// comments are skipped.
pub fn parse_labels(g: &Graph, text: &str) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [name, label] = toks[..] else {
            bail!("line {}: expected `vertex label`, found {line:?}", i + 1);
        };
        let label = match label {
            "1" => true,
            "0" => false,
            other => bail!("line {}: label must be 0 or 1, found {other:?}", i + 1),
        };
        out.push((vertex(g, name).with_context(|| format!("line {}", i + 1))?, label));
    }
    Ok(out)
}

pub fn read_labels(g: &Graph, path: &Path) -> Result<LabeledSample> {
    let text = fs::read_to_string(path).with_context(|| format!("reading labels {}", path.display()))?;
    Ok(LabeledSample::new(parse_labels(g, &text)?))
}

/// Vertex names separated by commas or whitespace, optionally in braces.
pub fn parse_set(g: &Graph, text: &str) -> Result<VertexSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = g.empty_set();
    for name in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        set.insert(vertex(g, name)?);
    }
    Ok(set)
}

pub fn read_set(g: &Graph, path: &Path) -> Result<VertexSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading vertex set {}", path.display()))?;
    let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
    parse_set(g, &body)
}

/// Numeric names compare as numbers, then everything else as strings.
fn name_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

pub fn names(g: &Graph, set: &VertexSet) -> Vec<String> {
    let mut out: Vec<String> = set.iter().map(|v| g.name(v).to_string()).collect();
    out.sort_by(|a, b| name_order(a, b));
    out
}

/// `{a,b,c}` with sorted names.
pub fn format_set(g: &Graph, set: &VertexSet) -> String {
    format!("{{{}}}", names(g, set).join(","))
}
