use monohalf::consistency::{candidate_sets, has_nontrivial_halfspace, mh_check, structural_formula, LabeledSample};
use monohalf::corpus::{random_corpus, CorpusSpec};
use monohalf::oracles::{constraint_semantics_bf, four_cycles_bf, halfspaces_bf};
use monohalf::shadow::is_halfspace;
use monohalf::twosat::ClauseOrigin;
use monohalf::{fixtures, Graph, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_corpus() -> Vec<Graph> {
    let spec = CorpusSpec { sizes: (4..=8).collect(), per_cell: 6, ..CorpusSpec::default() };
    let mut graphs: Vec<Graph> = random_corpus(&spec).into_iter().map(|c| c.graph).collect();
    graphs.extend(fixtures::named().into_iter().map(|(_, g)| g));
    graphs
}

fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(move |m| VertexSet::from_mask(n, m))
}

#[test]
fn formula_models_are_exactly_the_oriented_halfspaces() {
    for g in small_corpus() {
        for (u, v) in g.oriented_edges() {
            let f = structural_formula(&g, u, v).unwrap();
            let models: Vec<_> = all_subsets(g.n()).filter(|a| f.holds(a)).collect();
            let mut expected = constraint_semantics_bf(&g, u, v).unwrap();
            expected.sort();
            let mut models = models;
            models.sort();
            assert_eq!(models, expected, "edge ({u},{v}) of {:?}", g.edges());
        }
    }
}

#[test]
fn every_family_holds_on_every_oriented_halfspace() {
    for g in small_corpus() {
        let hs = halfspaces_bf(&g).unwrap();
        for (u, v) in g.oriented_edges() {
            let f = structural_formula(&g, u, v).unwrap();
            for h in hs.iter().filter(|h| h.contains(u) && !h.contains(v)) {
                for family in ClauseOrigin::FAMILIES {
                    assert!(
                        f.clauses_of(family).all(|c| c.holds(h)),
                        "{} violated by {h:?} at ({u},{v})",
                        family.label()
                    );
                }
            }
        }
    }
}

#[test]
fn square_matches_four_cycle_oracle() {
    for g in small_corpus() {
        for (u, v) in g.oriented_edges() {
            assert_eq!(candidate_sets(&g, u, v).unwrap().square, four_cycles_bf(&g, u, v));
        }
    }
}

#[test]
fn nontrivial_halfspace_decision() {
    for g in small_corpus() {
        let brute = halfspaces_bf(&g).unwrap().len() > 2;
        let found = has_nontrivial_halfspace(&g);
        assert_eq!(found.is_some(), brute);
        if let Some(h) = found {
            assert!(!h.is_trivial() && is_halfspace(&g, h.positive_side()));
        }
    }
}

fn check_against_brute(g: &Graph, sample: &LabeledSample) {
    let (pos, neg) = sample.split(g.n());
    let brute = halfspaces_bf(g).unwrap().into_iter().any(|h| pos.is_subset(&h) && h.is_disjoint(&neg));
    match mh_check(g, sample).unwrap() {
        Some(h) => {
            assert!(brute);
            assert!(is_halfspace(g, h.positive_side()));
            assert!(sample.is_consistent_with(h.positive_side()));
        }
        None => assert!(!brute, "missed a consistent halfspace for {sample:?}"),
    }
}

#[test]
fn check_agrees_with_brute_force_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in small_corpus() {
        for _ in 0..10 {
            let k = rng.gen_range(1..=g.n());
            let sample = LabeledSample::new((0..k).map(|_| (rng.gen_range(0..g.n()), rng.gen_bool(0.5))).collect());
            check_against_brute(&g, &sample);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn check_is_sound_and_complete(
        n in 4usize..9,
        p in 0.2f64..0.7,
        seed in any::<u64>(),
        labels in proptest::collection::vec((any::<usize>(), any::<bool>()), 1..8),
    ) {
        if let Some(g) = monohalf::corpus::erdos_renyi(n, p, seed) {
            let sample = LabeledSample::new(labels.into_iter().map(|(v, l)| (v % n, l)).collect());
            check_against_brute(&g, &sample);
        }
    }
}
