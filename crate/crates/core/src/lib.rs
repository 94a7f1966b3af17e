//! Monophonic halfspaces on graphs: convexity, edge shadows, 2-SAT based
//! consistency checking, enumeration, and PAC, active and online learners.
//!
//! Vertices are dense `usize` identifiers `0..n`; sets of vertices are
//! [`VertexSet`] bitsets. A halfspace is a vertex set `H` such that both `H`
//! and `V \ H` are m-convex, meaning closed under induced paths.

pub mod consistency;
pub mod convexity;
pub mod corpus;
pub mod enumeration;
pub mod fixtures;
pub mod graph;
pub mod learners;
#[cfg(feature = "oracles")]
pub mod oracles;
pub mod shadow;
pub mod twosat;
pub mod vertex_set;

pub use consistency::{mh_check, CheckError, ConsistencyChecker, LabeledSample};
pub use convexity::{hull_set_greedy, is_mconvex, mhull};
pub use graph::{load_graph, Graph, GraphError};
pub use shadow::{edge_shadow, is_halfspace, Halfspace, ShadowError, ShadowTable};
pub use twosat::{ClauseOrigin, Formula2, Lit};
pub use vertex_set::VertexSet;
