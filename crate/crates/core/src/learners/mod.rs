//! Learners over the class of monophonic halfspaces: PAC and ERM, active
//! learning with membership queries, and online mistake-bounded learners.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consistency::CheckError;

pub mod active;
pub mod online;
pub mod pac;

pub use active::{active_learn, active_query_bound, ActiveOutcome, QueryOracle, TargetOracle};
pub use online::{
    halving_mistake_bound, run_stream, winnow_mistake_bound, Demotion, Halving, OnlineLearner, ShadowFeatures,
    WeightedMajority, Winnow,
};
pub use pac::{agnostic_sample_size, erm, pac_learn_realizable, pac_sample_size, Erm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LearnError {
    #[error("no halfspace is consistent with the sample")]
    NotRealizable,
    #[error("oracle answers are not induced by a halfspace (witness vertex {vertex})")]
    OracleNotRealizable { vertex: usize },
    #[error("no halfspace agrees with the stream up to round {round}")]
    StreamNotRealizable { round: usize },
    #[error(transparent)]
    Check(#[from] CheckError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    Round { round: usize, vertex: usize, prediction: bool, truth: bool, mistake: bool },
    Query { vertex: usize, answer: bool },
}

/// Ordered record of a learner's rounds or queries, with running totals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnerTranscript {
    pub events: Vec<Event>,
    pub mistakes: usize,
    pub queries: usize,
}

impl LearnerTranscript {
    pub fn record_round(&mut self, vertex: usize, prediction: bool, truth: bool) {
        let mistake = prediction != truth;
        self.mistakes += usize::from(mistake);
        self.events.push(Event::Round { round: self.rounds(), vertex, prediction, truth, mistake });
    }

    pub fn record_query(&mut self, vertex: usize, answer: bool) {
        self.queries += 1;
        self.events.push(Event::Query { vertex, answer });
    }

    pub fn rounds(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Round { .. })).count()
    }

    /// One JSON object per event, then a `totals` line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("event serializes"));
            out.push('\n');
        }
        let totals = serde_json::json!({ "kind": "totals", "mistakes": self.mistakes, "queries": self.queries });
        out.push_str(&totals.to_string());
        out.push('\n');
        out
    }

    /// Whether the totals agree with the events.
    pub fn is_consistent(&self) -> bool {
        let mistakes = self.events.iter().filter(|e| matches!(e, Event::Round { mistake: true, .. })).count();
        let queries = self.events.iter().filter(|e| matches!(e, Event::Query { .. })).count();
        mistakes == self.mistakes && queries == self.queries
    }
}
