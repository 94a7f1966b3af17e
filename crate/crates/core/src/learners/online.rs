//! Online learners: Winnow over edge-shadow features (realizable and
//! agnostic), Halving over the enumerated class, and weighted majority.

use super::{LearnError, LearnerTranscript};
use crate::enumeration::list_all_fpt;
use crate::graph::Graph;
use crate::shadow::ShadowTable;
use crate::vertex_set::VertexSet;

/// A learner that predicts a vertex's label, then sees the truth.
pub trait OnlineLearner {
    fn name(&self) -> &'static str;
    fn predict(&mut self, v: usize) -> bool;
    fn update(&mut self, v: usize, truth: bool) -> Result<(), LearnError>;
}

/// Feeds `stream` to `learner`, recording every round. Stops at the first
/// update error.
pub fn run_stream(learner: &mut dyn OnlineLearner, stream: &[(usize, bool)]) -> Result<LearnerTranscript, LearnError> {
    let mut t = LearnerTranscript::default();
    for &(v, truth) in stream {
        let prediction = learner.predict(v);
        t.record_round(v, prediction, truth);
        learner.update(v, truth)?;
    }
    Ok(t)
}

/// The fixed feature sequence `u₁/v₁, …, u_m/v_m, v₁/u₁, …, v_m/u_m` over
/// the sorted edge list. `active[x]` lists the features containing `x`.
#[derive(Clone, Debug)]
pub struct ShadowFeatures {
    pub shadows: Vec<VertexSet>,
    active: Vec<Vec<usize>>,
}

impl ShadowFeatures {
    pub fn new(g: &Graph) -> Self {
        let table = ShadowTable::new(g);
        let forward = g.edges().iter().map(|&(a, b)| table.get(a, b).unwrap().clone());
        let backward = g.edges().iter().map(|&(a, b)| table.get(b, a).unwrap().clone());
        let shadows: Vec<VertexSet> = forward.chain(backward).collect();
        let mut active = vec![Vec::new(); g.n()];
        for (i, s) in shadows.iter().enumerate() {
            for x in s {
                active[x].push(i);
            }
        }
        Self { shadows, active }
    }

    pub fn dim(&self) -> usize {
        self.shadows.len()
    }

    pub fn active(&self, x: usize) -> &[usize] {
        &self.active[x]
    }
}

/// What happens to active weights after a false positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demotion {
    /// Winnow1: set to zero.
    Zero,
    /// Divide by the promotion factor; tolerates label noise.
    Divide,
}

/// Winnow with promotion factor `α = 2` and threshold `θ = d = 2m`.
/// Predicts 1 iff the active weight reaches `θ`.
#[derive(Clone, Debug)]
pub struct Winnow {
    features: ShadowFeatures,
    pub weights: Vec<f64>,
    pub theta: f64,
    pub alpha: f64,
    pub demotion: Demotion,
}

impl Winnow {
    pub fn new(g: &Graph, demotion: Demotion) -> Self {
        let features = ShadowFeatures::new(g);
        let d = features.dim();
        Self { features, weights: vec![1.0; d], theta: d as f64, alpha: 2.0, demotion }
    }

    /// Winnow1: false positives zero the active weights.
    pub fn realizable(g: &Graph) -> Self {
        Self::new(g, Demotion::Zero)
    }

    pub fn agnostic(g: &Graph) -> Self {
        Self::new(g, Demotion::Divide)
    }

    pub fn features(&self) -> &ShadowFeatures {
        &self.features
    }

    fn score(&self, v: usize) -> f64 {
        self.features.active(v).iter().map(|&i| self.weights[i]).sum()
    }
}

impl OnlineLearner for Winnow {
    fn name(&self) -> &'static str {
        match self.demotion {
            Demotion::Zero => "winnow",
            Demotion::Divide => "agnostic-winnow",
        }
    }

    fn predict(&mut self, v: usize) -> bool {
        self.score(v) >= self.theta
    }

    fn update(&mut self, v: usize, truth: bool) -> Result<(), LearnError> {
        let predicted = self.predict(v);
        if predicted == truth {
            return Ok(());
        }
        let factor = match (truth, self.demotion) {
            (true, _) => self.alpha,
            (false, Demotion::Zero) => 0.0,
            (false, Demotion::Divide) => 1.0 / self.alpha,
        };
        for &i in self.features.active(v) {
            self.weights[i] *= factor;
        }
        Ok(())
    }
}

/// `2ω(log₂(2m) + 1) + 1`, the Winnow1 mistake bound for targets that are a
/// union of at most `ω` of the `2m` shadow features.
pub fn winnow_mistake_bound(omega: usize, m: usize) -> f64 {
    2.0 * omega as f64 * ((2.0 * m as f64).log2() + 1.0) + 1.0
}

/// `⌈log₂ |class|⌉`.
pub fn halving_mistake_bound(class_size: usize) -> usize {
    if class_size <= 1 {
        0
    } else {
        (usize::BITS - (class_size - 1).leading_zeros()) as usize
    }
}

/// Majority vote over the hypotheses still consistent with every label.
/// Ties predict 1.
#[derive(Clone, Debug)]
pub struct Halving {
    version_space: Vec<VertexSet>,
    round: usize,
}

impl Halving {
    pub fn new(g: &Graph) -> Self {
        Self::from_hypotheses(list_all_fpt(g).into_iter().map(|h| h.into_set()).collect())
    }

    pub fn from_hypotheses(version_space: Vec<VertexSet>) -> Self {
        Self { version_space, round: 0 }
    }

    pub fn version_space(&self) -> &[VertexSet] {
        &self.version_space
    }
}

impl OnlineLearner for Halving {
    fn name(&self) -> &'static str {
        "halving"
    }

    fn predict(&mut self, v: usize) -> bool {
        let yes = self.version_space.iter().filter(|h| h.contains(v)).count();
        2 * yes >= self.version_space.len()
    }

    fn update(&mut self, v: usize, truth: bool) -> Result<(), LearnError> {
        self.version_space.retain(|h| h.contains(v) == truth);
        self.round += 1;
        if self.version_space.is_empty() {
            return Err(LearnError::StreamNotRealizable { round: self.round - 1 });
        }
        Ok(())
    }
}

/// Weighted majority with `β = 1/2` over the enumerated halfspaces. Weights
/// are kept as mistake counts, so `w_i = 2^{-mistakes_i}` never underflows.
/// Ties predict 0.
#[derive(Clone, Debug)]
pub struct WeightedMajority {
    experts: Vec<VertexSet>,
    mistakes: Vec<u32>,
}

impl WeightedMajority {
    pub fn new(g: &Graph) -> Self {
        Self::from_experts(list_all_fpt(g).into_iter().map(|h| h.into_set()).collect())
    }

    pub fn from_experts(experts: Vec<VertexSet>) -> Self {
        let mistakes = vec![0; experts.len()];
        Self { experts, mistakes }
    }

    pub fn expert_mistakes(&self) -> &[u32] {
        &self.mistakes
    }
}

impl OnlineLearner for WeightedMajority {
    fn name(&self) -> &'static str {
        "wm"
    }

    fn predict(&mut self, v: usize) -> bool {
        let floor = self.mistakes.iter().copied().min().unwrap_or(0);
        let (mut yes, mut no) = (0.0, 0.0);
        for (h, &k) in self.experts.iter().zip(&self.mistakes) {
            let w = 0.5f64.powi((k - floor) as i32);
            if h.contains(v) {
                yes += w;
            } else {
                no += w;
            }
        }
        yes > no
    }

    fn update(&mut self, v: usize, truth: bool) -> Result<(), LearnError> {
        for (h, k) in self.experts.iter().zip(self.mistakes.iter_mut()) {
            if h.contains(v) != truth {
                *k += 1;
            }
        }
        Ok(())
    }
}
