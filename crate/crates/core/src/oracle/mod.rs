//! Exact optima for small instances.
//!
//! [`SubsetDp`] solves each objective by dynamic programming over vertex
//! subsets. Every tree is a root split `(A, S∖A)` plus optimal subtrees, and a
//! split contributes `|S|·w(A, S∖A)` to revenue and cost or
//! `w_in(A) + w_in(S∖A)` to the common-ancestor cost, whose optimum then adds
//! the total weight `W`. [`for_each_tree`] is an independent check that walks
//! every labeled binary tree.

mod enumerate;

pub use enumerate::{
    for_each_tree, tree_count, EnumeratedOptima, TopologyTable, ENUMERATION_LIMIT,
};

use serde::{Deserialize, Serialize};

use crate::error::{HcError, Result};
use crate::graph::DissimilarityGraph;
use crate::tree::{ClusterTree, NodeId, TreeBuilder};

/// Largest `n` the subset DP accepts.
pub const DP_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    Rev,
    Cost,
    CostH,
}

impl ObjectiveKind {
    fn maximize(self) -> bool {
        matches!(self, ObjectiveKind::Rev)
    }
}

/// Solved table: per-subset optimum and the side of its best split that holds
/// the subset's lowest vertex.
#[derive(Debug, Clone)]
pub struct SubsetDp {
    kind: ObjectiveKind,
    n: usize,
    value: Vec<f64>,
    split: Vec<u32>,
    offset: f64,
}

impl SubsetDp {
    pub fn solve(g: &DissimilarityGraph, kind: ObjectiveKind) -> Result<Self> {
        let n = g.n();
        if n > DP_LIMIT {
            return Err(HcError::BudgetExceeded {
                what: "subset DP vertex count",
                size: n,
                limit: DP_LIMIT,
            });
        }
        if n == 0 {
            return Err(HcError::InvalidArgument("graph has no vertices".into()));
        }
        let full = (1usize << n) - 1;
        let w_in = internal_weights(g);
        let maximize = kind.maximize();
        let mut value = vec![0.0f64; full + 1];
        let mut split = vec![0u32; full + 1];

        for s in 1..=full {
            if s.count_ones() < 2 {
                continue;
            }
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let size = s.count_ones() as f64;
            let mut best: Option<(f64, usize)> = None;
            // Submasks of `rest` other than `rest` itself, so both sides are nonempty.
            let mut sub = (rest - 1) & rest;
            loop {
                let a = low | sub;
                let b = s ^ a;
                let local = match kind {
                    ObjectiveKind::Rev | ObjectiveKind::Cost => {
                        size * (w_in[s] - w_in[a] - w_in[b])
                    }
                    ObjectiveKind::CostH => w_in[a] + w_in[b],
                };
                let total = local + value[a] + value[b];
                let better = match best {
                    None => true,
                    Some((v, _)) => {
                        if maximize {
                            total > v
                        } else {
                            total < v
                        }
                    }
                };
                if better {
                    best = Some((total, a));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            let (v, a) = best.expect("at least one split");
            value[s] = v;
            split[s] = a as u32;
        }

        let offset = if kind == ObjectiveKind::CostH {
            g.total_weight()
        } else {
            0.0
        };
        Ok(SubsetDp {
            kind,
            n,
            value,
            split,
            offset,
        })
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    /// Optimal objective value over all trees on the full vertex set.
    pub fn optimum(&self) -> f64 {
        self.value[self.value.len() - 1] + self.offset
    }

    /// Optimal recurrence value of subset `mask`, without the `W` offset.
    pub fn subset_value(&self, mask: usize) -> f64 {
        self.value[mask]
    }

    pub fn witness(&self) -> ClusterTree {
        fn build(dp: &SubsetDp, s: usize, b: &mut TreeBuilder) -> NodeId {
            if s.count_ones() == 1 {
                return b.leaf(s.trailing_zeros() as usize);
            }
            let a = dp.split[s] as usize;
            let l = build(dp, a, b);
            let r = build(dp, s ^ a, b);
            b.join(l, r)
        }
        let mut b = TreeBuilder::with_capacity(self.n);
        let root = build(self, (1usize << self.n) - 1, &mut b);
        b.finish(root).expect("DP witness is a valid tree")
    }
}

/// `w_in(mask)` for every subset, built by adding the lowest vertex to the rest.
fn internal_weights(g: &DissimilarityGraph) -> Vec<f64> {
    let n = g.n();
    let mut w_in = vec![0.0f64; 1 << n];
    for s in 1usize..(1 << n) {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut add = 0.0;
        let mut r = rest;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            add += g.weight(v, u);
            r &= r - 1;
        }
        w_in[s] = w_in[rest] + add;
    }
    w_in
}

fn solve(g: &DissimilarityGraph, kind: ObjectiveKind) -> Result<(f64, ClusterTree)> {
    let dp = SubsetDp::solve(g, kind)?;
    Ok((dp.optimum(), dp.witness()))
}

/// Maximum of `rev_dissim` over all trees, with a witness.
pub fn opt_rev(g: &DissimilarityGraph) -> Result<(f64, ClusterTree)> {
    solve(g, ObjectiveKind::Rev)
}

/// Minimum of `cost_dasgupta` over all trees, with a witness.
pub fn opt_cost(g: &DissimilarityGraph) -> Result<(f64, ClusterTree)> {
    solve(g, ObjectiveKind::Cost)
}

/// Minimum of `cost_h` over all trees, with a witness.
pub fn opt_cost_h(g: &DissimilarityGraph) -> Result<(f64, ClusterTree)> {
    solve(g, ObjectiveKind::CostH)
}

pub fn optimum(g: &DissimilarityGraph, kind: ObjectiveKind) -> Result<(f64, ClusterTree)> {
    solve(g, kind)
}
