//! Objective evaluators. Sums run over unordered pairs `{i, j}`.
//!
//! * `cost_dasgupta` / `rev_dissim`: `Σ w_ij · |T_ij|` (minimized for
//!   similarities, maximized for dissimilarities).
//! * `rev_dual`: `Σ w_ij · (n − |T_ij|)`.
//! * `cost_h`: `Σ w_ij · H_ij`, with `H_ij` the root-inclusive depth of the LCA.

use serde::{Deserialize, Serialize};

use super::ClusterTree;
use crate::error::{domain, Result};
use crate::graph::{DissimilarityGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objectives {
    pub cost: f64,
    pub rev: f64,
    pub rev_dual: f64,
    pub cost_h: f64,
}

/// Accumulates `Σ w(L, R) · size` and `Σ w(L, R) · depth` over internal nodes.
fn accumulate(g: &DissimilarityGraph, t: &ClusterTree) -> Result<(f64, f64, f64)> {
    t.check_vertex_count(g.n())?;
    let n = g.n() as f64;
    let (mut by_size, mut by_complement, mut by_depth) = (0.0, 0.0, 0.0);
    for id in t.internal_nodes() {
        let (l, r) = t.children(id).expect("internal");
        let cross = g.cross_weight(t.leaves(l), t.leaves(r));
        if cross == 0.0 {
            continue;
        }
        let size = t.size(id) as f64;
        by_size += cross * size;
        by_complement += cross * (n - size);
        by_depth += cross * t.depth(id) as f64;
    }
    Ok((by_size, by_complement, by_depth))
}

pub fn cost_dasgupta(g: &DissimilarityGraph, t: &ClusterTree) -> Result<f64> {
    accumulate(g, t).map(|(s, _, _)| s)
}

/// Same sum as [`cost_dasgupta`], reported under its maximization name.
pub fn rev_dissim(g: &DissimilarityGraph, t: &ClusterTree) -> Result<f64> {
    accumulate(g, t).map(|(s, _, _)| s)
}

pub fn rev_dual(g: &DissimilarityGraph, t: &ClusterTree) -> Result<f64> {
    accumulate(g, t).map(|(_, c, _)| c)
}

pub fn cost_h(g: &DissimilarityGraph, t: &ClusterTree) -> Result<f64> {
    accumulate(g, t).map(|(_, _, d)| d)
}

pub fn evaluate(g: &DissimilarityGraph, t: &ClusterTree) -> Result<Objectives> {
    let (size, complement, depth) = accumulate(g, t)?;
    Ok(Objectives {
        cost: size,
        rev: size,
        rev_dual: complement,
        cost_h: depth,
    })
}

/// Weight kept inside the two sides of a split: `w_in(a) + w_in(b)`.
pub fn split_cost_h(g: &DissimilarityGraph, a: &[Vertex], b: &[Vertex]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return domain("split sides must be nonempty");
    }
    let mut mark = vec![0u8; g.n()];
    for (side, set) in [(1u8, a), (2u8, b)] {
        for &v in set {
            if v >= g.n() {
                return domain(format!("vertex {v} out of range"));
            }
            if mark[v] != 0 {
                return domain(format!("vertex {v} appears twice in the split"));
            }
            mark[v] = side;
        }
    }
    Ok(g.internal_weight(a) + g.internal_weight(b))
}
