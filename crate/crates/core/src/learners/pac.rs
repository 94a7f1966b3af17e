//! PAC learning: sample sizes, the realizable learner, ERM, and a seeded
//! experiment harness that measures true error exactly.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LearnError;
use crate::consistency::{mh_check, LabeledSample};
use crate::enumeration::list_all_fpt;
use crate::graph::{clique_number_tilde, Graph};
use crate::shadow::Halfspace;

/// Realizable sample size `⌈(4/ε)(d·ln(13/ε) + ln(2/δ))⌉`.
pub fn pac_sample_size(epsilon: f64, delta: f64, d: usize) -> usize {
    assert!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0, "ε and δ must lie in (0, 1)");
    (4.0 / epsilon * (d as f64 * (13.0 / epsilon).ln() + (2.0 / delta).ln())).ceil() as usize
}

/// Agnostic sample size `⌈(2/ε²)(d·ln 4 + ln(2/δ))⌉`.
pub fn agnostic_sample_size(epsilon: f64, delta: f64, d: usize) -> usize {
    assert!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0, "ε and δ must lie in (0, 1)");
    (2.0 / (epsilon * epsilon) * (d as f64 * 4f64.ln() + (2.0 / delta).ln())).ceil() as usize
}

/// Any halfspace consistent with a realizable sample.
pub fn pac_learn_realizable(g: &Graph, sample: &LabeledSample) -> Result<Halfspace, LearnError> {
    mh_check(g, sample)?.ok_or(LearnError::NotRealizable)
}

/// An empirical risk minimizer and its error count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erm {
    pub halfspace: Halfspace,
    pub errors: usize,
    pub sample_size: usize,
}

impl Erm {
    /// Fraction of the sample misclassified; `0` for an empty sample.
    pub fn risk(&self) -> Ratio<usize> {
        Ratio::new(self.errors, self.sample_size.max(1))
    }
}

/// Minimizes empirical risk over all halfspaces; ties go to the smallest
/// halfspace in sorted-vertex-list order.
pub fn erm(g: &Graph, sample: &LabeledSample) -> Result<Erm, LearnError> {
    sample.validate(g)?;
    Ok(erm_over(&list_all_fpt(g), sample))
}

/// ERM over an explicit, sorted hypothesis list.
pub fn erm_over(hypotheses: &[Halfspace], sample: &LabeledSample) -> Erm {
    let (errors, halfspace) = hypotheses
        .iter()
        .map(|h| (sample.mistakes(h.positive_side()), h))
        .min()
        .expect("∅ and V are always halfspaces");
    Erm { halfspace: halfspace.clone(), errors, sample_size: sample.len() }
}

/// Outcome of one PAC trial.
#[derive(Clone, Debug, Serialize)]
pub struct PacTrial {
    pub trial: usize,
    pub graph: usize,
    pub sample_size: usize,
    pub target: Vec<usize>,
    pub learned: Vec<usize>,
    /// `|H Δ H*| / n` under the uniform distribution.
    pub true_error: f64,
    pub failed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PacReport {
    pub epsilon: f64,
    pub delta: f64,
    pub trials: Vec<PacTrial>,
    pub failures: usize,
}

impl PacReport {
    pub fn failure_rate(&self) -> f64 {
        self.failures as f64 / self.trials.len().max(1) as f64
    }
}

/// Runs `trials` realizable trials cycling through `graphs`. Each trial draws
/// a target uniformly from the graph's halfspaces, then a uniform i.i.d.
/// sample sized for `d = ω̃(G)`, and learns with [`pac_learn_realizable`].
/// Trial `t` is seeded from `seed` and `t` alone.
pub fn pac_experiment(graphs: &[Graph], epsilon: f64, delta: f64, trials: usize, seed: u64) -> PacReport {
    assert!(!graphs.is_empty(), "need at least one graph");
    let sizes: Vec<usize> = graphs.iter().map(|g| pac_sample_size(epsilon, delta, clique_number_tilde(g))).collect();
    let classes: Vec<Vec<Halfspace>> = graphs.iter().map(list_all_fpt).collect();
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let gi = trial % graphs.len();
        let g = &graphs[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let target = classes[gi].choose(&mut rng).expect("nonempty class").positive_side().clone();
        let sample = LabeledSample::new(
            (0..sizes[gi])
                .map(|_| {
                    let v = rng.gen_range(0..g.n());
                    (v, target.contains(v))
                })
                .collect(),
        );
        let learned = pac_learn_realizable(g, &sample).expect("sample is labeled by a halfspace");
        let true_error = learned.positive_side().symmetric_difference(&target).len() as f64 / g.n() as f64;
        out.push(PacTrial {
            trial,
            graph: gi,
            sample_size: sizes[gi],
            target: target.to_vec(),
            learned: learned.positive_side().to_vec(),
            true_error,
            failed: true_error > epsilon,
        });
    }
    let failures = out.iter().filter(|t| t.failed).count();
    PacReport { epsilon, delta, trials: out, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sample_sizes_are_monotone() {
        let base = pac_sample_size(0.5, 0.5, 2);
        assert!(base > 0);
        assert!(pac_sample_size(0.25, 0.5, 2) > base);
        assert!(pac_sample_size(0.5, 0.25, 2) > base);
        assert!(pac_sample_size(0.5, 0.5, 3) > base);
        assert_eq!(base, (8.0 * (2.0 * 26f64.ln() + 4f64.ln())).ceil() as usize);
        assert!(agnostic_sample_size(0.1, 0.5, 2) > agnostic_sample_size(0.2, 0.5, 2));
    }

    #[test]
    fn erm_examples() {
        let p4 = fixtures::path(4);
        let s = LabeledSample::new(vec![(0, true), (2, false)]);
        assert_eq!(erm(&p4, &s).unwrap().risk(), Ratio::from_integer(0));
        let twice = LabeledSample::new(vec![(0, true), (0, false)]);
        assert_eq!(erm(&p4, &twice).unwrap().risk(), Ratio::new(1, 2));
        let c5 = fixtures::cycle(5);
        let e = erm(&c5, &s).unwrap();
        assert_eq!(e.risk(), Ratio::new(1, 2));
        assert!(e.halfspace.positive_side().is_empty());
        assert_eq!(pac_learn_realizable(&c5, &s), Err(LearnError::NotRealizable));
    }

    #[test]
    fn small_experiment() {
        let report = pac_experiment(&[fixtures::path(4), fixtures::complete(3)], 0.2, 0.2, 20, 1);
        assert_eq!(report.trials.len(), 20);
        assert!(report.failure_rate() <= 0.2);
    }
}
