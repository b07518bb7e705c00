//! Hierarchical clustering on dissimilarity graphs.
//!
//! Graphs are complete and weighted ([`graph::DissimilarityGraph`]); trees are
//! binary hierarchies over the vertices ([`tree::ClusterTree`]). The crate
//! evaluates trees under the size-weighted revenue and the common-ancestor
//! cost, builds trees with random partitioning, average linkage, recursive
//! max-cut and the peel-off ensemble, and computes exact optima for small
//! instances.

pub mod algorithms;
pub mod bench;
pub mod error;
pub mod graph;
pub mod maxcut;
pub mod oracle;
pub mod tree;

pub use error::{HcError, Result};
pub use graph::{DissimilarityGraph, Vertex};
pub use maxcut::{CutOracle, SolverKind};
pub use tree::{ClusterTree, Objectives};
