use crate::error::Result;
use crate::graph::{DissimilarityGraph, Vertex};
use crate::maxcut::CutOracle;
use crate::tree::{ClusterTree, NodeId, TreeBuilder};

/// Top-down tree that splits every cluster along the oracle's max-cut of the
/// induced subgraph.
///
/// Under the common-ancestor cost this is a `4α/(4α − 1)` approximation when
/// the oracle certifies ratio `α` (see [`super::cost_h_ratio_bound`]).
pub fn recursive_max_cut_tree(g: &DissimilarityGraph, oracle: &CutOracle) -> Result<ClusterTree> {
    fn split(
        g: &DissimilarityGraph,
        oracle: &CutOracle,
        cluster: &[Vertex],
        b: &mut TreeBuilder,
    ) -> Result<NodeId> {
        if let [v] = cluster {
            return Ok(b.leaf(*v));
        }
        let cut = oracle.cut(g, cluster)?;
        let l = split(g, oracle, &cut.left, b)?;
        let r = split(g, oracle, &cut.right, b)?;
        Ok(b.join(l, r))
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    let mut b = TreeBuilder::with_capacity(g.n());
    let root = split(g, oracle, &all, &mut b)?;
    b.finish(root)
}
