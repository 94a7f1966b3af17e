//! Acceptance suite. Every criterion runs at zero tolerance against the
//! brute-force oracles and prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::Instant;

use monohalf::consistency::{has_nontrivial_halfspace, mh_check, structural_formula, LabeledSample};
use monohalf::convexity::mhull;
use monohalf::corpus::{random_corpus, CorpusSpec};
use monohalf::enumeration::{count_bound, list_all_fpt, list_all_fpt_with};
use monohalf::graph::{clique_number, clique_number_tilde, complement_induced};
use monohalf::learners::online::{halving_mistake_bound, run_stream, winnow_mistake_bound, Halving, Winnow};
use monohalf::learners::pac::pac_experiment;
use monohalf::learners::{active_learn, active_query_bound, TargetOracle};
use monohalf::oracles::{halfspaces_bf, vc_dim_bf, IntervalTable};
use monohalf::shadow::{
    cutset, edge_shadow, is_halfspace, shadow_reconstruct_with, sparse_shadow_cover_with, Halfspace, ShadowTable,
};
use monohalf::twosat::{ClauseOrigin, Formula2};
use monohalf::{fixtures, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Case {
    name: String,
    graph: Graph,
    /// Brute-force halfspaces, sorted.
    halfspaces: Vec<VertexSet>,
    intervals: IntervalTable,
    omega: usize,
}

fn cases() -> Vec<Case> {
    let mut named: Vec<(String, Graph)> =
        random_corpus(&CorpusSpec::default()).into_iter().map(|c| (c.id, c.graph)).collect();
    named.extend(fixtures::named());
    named
        .into_iter()
        .map(|(name, graph)| Case {
            halfspaces: halfspaces_bf(&graph).unwrap(),
            intervals: IntervalTable::new(&graph),
            omega: clique_number(&graph),
            name,
            graph,
        })
        .collect()
}

type Criterion = fn(&[Case]) -> Verdict;

/// Outcome of one criterion: violations found and a one-line summary.
struct Verdict {
    violations: usize,
    summary: String,
}

fn halfspace_objects(case: &Case) -> impl Iterator<Item = Halfspace> + '_ {
    case.halfspaces.iter().map(|h| Halfspace::new(&case.graph, h.clone()).expect("oracle halfspace"))
}

fn first_failure(slot: &mut Option<String>, msg: impl FnOnce() -> String) {
    if slot.is_none() {
        *slot = Some(msg());
    }
}

fn with_witness(summary: String, witness: Option<String>) -> String {
    match witness {
        Some(w) => format!("{summary}; first violation: {w}"),
        None => summary,
    }
}

fn enumeration_exactness(cases: &[Case]) -> Verdict {
    let mut bad = 0;
    let mut witness = None;
    let mut duplicates = 0;
    for c in cases {
        let mut emitted = Vec::new();
        let mut seen = HashSet::new();
        list_all_fpt_with(&c.graph, |h| {
            if !seen.insert(h.clone()) {
                duplicates += 1;
            }
            emitted.push(h.positive_side().clone());
            ControlFlow::Continue(())
        });
        emitted.sort();
        if emitted != c.halfspaces {
            bad += 1;
            first_failure(&mut witness, || c.name.clone());
        }
    }
    bad += duplicates;
    Verdict {
        violations: bad,
        summary: with_witness(format!("{} graphs, {duplicates} duplicate emissions", cases.len()), witness),
    }
}

fn consistency_checker(cases: &[Case]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut bad, mut samples, mut consistent) = (0, 0, 0);
    let mut witness = None;
    for c in cases {
        let n = c.graph.n();
        for _ in 0..12 {
            let k = rng.gen_range(1..=n);
            let sample = LabeledSample::new((0..k).map(|_| (rng.gen_range(0..n), rng.gen_bool(0.5))).collect());
            samples += 1;
            let (pos, neg) = sample.split(n);
            let brute = c.halfspaces.iter().any(|h| pos.is_subset(h) && h.is_disjoint(&neg));
            let ok = match mh_check(&c.graph, &sample).unwrap() {
                Some(h) => brute && is_halfspace(&c.graph, h.positive_side()) && sample.is_consistent_with(h.positive_side()),
                None => !brute,
            };
            consistent += usize::from(brute);
            if !ok {
                bad += 1;
                first_failure(&mut witness, || format!("{} {:?}", c.name, sample.entries));
            }
        }
    }
    Verdict {
        violations: bad,
        summary: with_witness(format!("{samples} samples ({consistent} realizable)"), witness),
    }
}

/// Clauses as `(mask, sign)` pairs over `u64` assignments, deduplicated.
fn mask_clauses(f: &Formula2) -> Vec<[(u64, bool); 2]> {
    let mut out: Vec<_> = f
        .clauses()
        .iter()
        .map(|c| c.lits.map(|l| (1u64 << l.var, l.positive)))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn mask_holds(clauses: &[[(u64, bool); 2]], a: u64) -> bool {
    clauses.iter().all(|c| c.iter().any(|&(bit, positive)| (a & bit != 0) == positive))
}

fn constraint_families(cases: &[Case]) -> Verdict {
    let (mut bad, mut checked_fwd, mut checked_bwd) = (0, 0, 0);
    let mut witness = None;
    for c in cases {
        let g = &c.graph;
        let hs: HashSet<u64> = c.halfspaces.iter().map(VertexSet::to_mask).collect();
        for (u, v) in g.oriented_edges() {
            let f = structural_formula(g, u, v).unwrap();
            for h in c.halfspaces.iter().filter(|h| h.contains(u) && !h.contains(v)) {
                for family in ClauseOrigin::FAMILIES {
                    checked_fwd += 1;
                    if !f.clauses_of(family).all(|cl| cl.holds(h)) {
                        bad += 1;
                        first_failure(&mut witness, || format!("{} ({u},{v}) {} on {h:?}", c.name, family.label()));
                    }
                }
            }
            let clauses = mask_clauses(&f);
            let (ub, vb) = (1u64 << u, 1u64 << v);
            for a in 0u64..1 << g.n() {
                // Models need u ∈ H and v ∉ H; the unit clauses on u and v
                // make every other assignment fail, so skip them outright.
                if a & ub == 0 || a & vb != 0 {
                    if mask_holds(&clauses, a) {
                        bad += 1;
                        first_failure(&mut witness, || format!("{} ({u},{v}) model {a:#b} violates orientation", c.name));
                    }
                    continue;
                }
                if mask_holds(&clauses, a) {
                    checked_bwd += 1;
                    if !hs.contains(&a) {
                        bad += 1;
                        first_failure(&mut witness, || format!("{} ({u},{v}) model {a:#b} is no halfspace", c.name));
                    }
                }
            }
        }
    }
    Verdict {
        violations: bad,
        summary: with_witness(
            format!("{checked_fwd} (halfspace, cut edge, family) checks, {checked_bwd} formula models"),
            witness,
        ),
    }
}

fn shadow_formula(cases: &[Case]) -> Verdict {
    let (mut bad, mut checked) = (0, 0);
    let mut witness = None;
    for c in cases {
        for (z, v) in c.graph.oriented_edges() {
            checked += 1;
            if edge_shadow(&c.graph, z, v).unwrap() != c.intervals.shadow(z, v) {
                bad += 1;
                first_failure(&mut witness, || format!("{} {z}/{v}", c.name));
            }
        }
    }
    Verdict { violations: bad, summary: with_witness(format!("{checked} oriented edges"), witness) }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|_| rng.gen_bool(p)))
}

fn hull(cases: &[Case]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut bad, mut pairs) = (0, 0);
    let mut witness = None;
    for c in cases {
        let g = &c.graph;
        for _ in 0..4 {
            let p = rng.gen_range(0.1..0.6);
            let x = random_subset(&mut rng, g.n(), p);
            let mut y = random_subset(&mut rng, g.n(), p);
            y.union_with(&x);
            pairs += 1;
            let hx = mhull(g, &x);
            let laws = x.is_subset(&hx) && mhull(g, &hx) == hx && hx.is_subset(&mhull(g, &y));
            if hx != c.intervals.hull(&x) || !laws {
                bad += 1;
                first_failure(&mut witness, || format!("{} {x:?}", c.name));
            }
        }
    }
    Verdict { violations: bad, summary: with_witness(format!("{pairs} (graph, subset) pairs"), witness) }
}

fn counting_bound(cases: &[Case]) -> Verdict {
    let mut bad = 0;
    let mut worst = (0.0f64, String::new());
    for c in cases {
        let bound = count_bound(&c.graph);
        let count = c.halfspaces.len() as u128;
        if num_rational::Ratio::from_integer(count) > bound {
            bad += 1;
        }
        let ratio = count as f64 / (*bound.numer() as f64 / *bound.denom() as f64);
        if ratio > worst.0 {
            worst = (ratio, c.name.clone());
        }
    }
    // Cliques realize 2^k halfspaces; compare against the bound there too.
    let k6 = fixtures::complete(6);
    let k6_count = list_all_fpt(&k6).len();
    if k6_count != 64 {
        bad += 1;
    }
    Verdict {
        violations: bad,
        summary: format!("max |Hm|/bound = {:.3} on {}; |Hm(K6)| = {k6_count}", worst.0, worst.1),
    }
}

fn decomposition(cases: &[Case]) -> Verdict {
    let (mut bad, mut pairs, mut covers) = (0, 0, 0);
    let mut witness = None;
    for c in cases {
        let g = &c.graph;
        let table = ShadowTable::new(g);
        for h in halfspace_objects(c) {
            for (u, v) in cutset(g, h.positive_side()) {
                pairs += 1;
                if shadow_reconstruct_with(&table, &h, u, v).is_err() {
                    bad += 1;
                    first_failure(&mut witness, || format!("{} reconstruct {h:?} at ({u},{v})", c.name));
                }
            }
            if !h.is_trivial() {
                covers += 1;
                match sparse_shadow_cover_with(&table, &h) {
                    Ok(cover) if cover.len() <= c.omega => {}
                    _ => {
                        bad += 1;
                        first_failure(&mut witness, || format!("{} cover of {h:?}", c.name));
                    }
                }
            }
        }
        for (u, v) in g.edges().iter().copied() {
            let tri = monohalf::shadow::triangle_set(g, u, v).unwrap();
            if complement_induced(g, &tri).components().len() > c.omega {
                bad += 1;
                first_failure(&mut witness, || format!("{} components at ({u},{v})", c.name));
            }
        }
    }
    Verdict {
        violations: bad,
        summary: with_witness(format!("{pairs} (halfspace, cut edge) pairs, {covers} covers"), witness),
    }
}

fn active_learning(cases: &[Case]) -> Verdict {
    let (mut bad, mut runs, mut worst_slack) = (0, 0, usize::MAX);
    let mut witness = None;
    for c in cases {
        let bound = active_query_bound(&c.graph);
        for h in &c.halfspaces {
            runs += 1;
            match active_learn(&c.graph, &mut TargetOracle::new(h.clone())) {
                Ok(out) if out.halfspace.positive_side() == h && out.queries <= bound => {
                    worst_slack = worst_slack.min(bound - out.queries);
                }
                other => {
                    bad += 1;
                    first_failure(&mut witness, || format!("{} target {h:?}: {:?}", c.name, other.map(|o| o.queries)));
                }
            }
        }
    }
    Verdict {
        violations: bad,
        summary: with_witness(format!("{runs} runs, min slack to query bound {worst_slack}"), witness),
    }
}

fn permuted_stream(rng: &mut ChaCha8Rng, target: &VertexSet, passes: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for _ in 0..passes {
        let mut order: Vec<usize> = (0..target.universe()).collect();
        order.shuffle(rng);
        out.extend(order.into_iter().map(|v| (v, target.contains(v))));
    }
    out
}

fn online_realizable(cases: &[Case]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut bad, mut streams) = (0, 0);
    let (mut max_winnow, mut max_halving) = (0.0f64, 0.0f64);
    let mut witness = None;
    for c in cases {
        let g = &c.graph;
        let wbound = winnow_mistake_bound(c.omega, g.m());
        let hbound = halving_mistake_bound(c.halfspaces.len());
        for h in &c.halfspaces {
            for _ in 0..5 {
                streams += 1;
                let stream = permuted_stream(&mut rng, h, 3);
                let w = run_stream(&mut Winnow::realizable(g), &stream).unwrap().mistakes;
                let hv = run_stream(&mut Halving::new(g), &stream).unwrap().mistakes;
                max_winnow = max_winnow.max(w as f64 / wbound);
                if hbound > 0 {
                    max_halving = max_halving.max(hv as f64 / hbound as f64);
                }
                if w as f64 > wbound || hv > hbound {
                    bad += 1;
                    first_failure(&mut witness, || format!("{} target {h:?}: winnow {w}, halving {hv}", c.name));
                }
            }
        }
    }
    Verdict {
        violations: bad,
        summary: with_witness(
            format!("{streams} streams; max mistakes/bound winnow {max_winnow:.3}, halving {max_halving:.3}"),
            witness,
        ),
    }
}

fn pac(cases: &[Case]) -> Verdict {
    let graphs: Vec<Graph> = cases.iter().map(|c| c.graph.clone()).collect();
    let report = pac_experiment(&graphs, 0.2, 0.2, 600, 0xacce);
    let rate = report.failure_rate();
    let sizes = report.trials.iter().map(|t| t.sample_size);
    let (lo, hi) = (sizes.clone().min().unwrap(), sizes.max().unwrap());
    let mean_error = report.trials.iter().map(|t| t.true_error).sum::<f64>() / report.trials.len() as f64;
    Verdict {
        violations: usize::from(rate > 0.2),
        summary: format!(
            "{} trials, sample sizes {lo}..={hi}, failure rate {rate:.4}, mean true error {mean_error:.4}",
            report.trials.len()
        ),
    }
}

fn vc_sanity(cases: &[Case]) -> Verdict {
    let (mut bad, mut checked) = (0, 0);
    let mut witness = None;
    for c in cases.iter().filter(|c| c.graph.n() <= 9) {
        checked += 1;
        let vc = vc_dim_bf(&c.graph).unwrap();
        if vc > clique_number_tilde(&c.graph) {
            bad += 1;
            first_failure(&mut witness, || format!("{} vc {vc}", c.name));
        }
    }
    Verdict { violations: bad, summary: with_witness(format!("{checked} graphs with n ≤ 9"), witness) }
}

fn two_partition(cases: &[Case]) -> Verdict {
    let mut bad = 0;
    let mut witness = None;
    for c in cases {
        let brute = c.halfspaces.len() > 2;
        let fast = has_nontrivial_halfspace(&c.graph);
        let ok = fast.as_ref().map_or(!brute, |h| brute && !h.is_trivial() && is_halfspace(&c.graph, h.positive_side()));
        if !ok {
            bad += 1;
            first_failure(&mut witness, || c.name.clone());
        }
    }
    let expect = [(fixtures::path(4), true), (fixtures::complete(3), true), (fixtures::cycle(5), false)];
    bad += expect.iter().filter(|(g, e)| has_nontrivial_halfspace(g).is_some() != *e).count();
    Verdict { violations: bad, summary: with_witness(format!("{} graphs plus P4, K3, C5", cases.len()), witness) }
}

fn main() {
    let start = Instant::now();
    let cases = cases();
    println!("acceptance corpus: {} graphs (built in {:.1?})", cases.len(), start.elapsed());

    let criteria: [(&str, Criterion); 12] = [
        ("enumeration exactness", enumeration_exactness),
        ("consistency checker", consistency_checker),
        ("constraint families", constraint_families),
        ("shadow formula", shadow_formula),
        ("hull", hull),
        ("counting bound", counting_bound),
        ("shadow decomposition", decomposition),
        ("active learning", active_learning),
        ("online realizable", online_realizable),
        ("PAC end-to-end", pac),
        ("VC sanity", vc_sanity),
        ("2-partition decision", two_partition),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = run(&cases);
        let status = if verdict.violations == 0 { "PASS" } else { "FAIL" };
        failed += usize::from(verdict.violations > 0);
        println!(
            "[{status}] {:>2}. {name}: {} violations; {} ({:.1?})",
            i + 1,
            verdict.violations,
            verdict.summary,
            t.elapsed()
        );
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
