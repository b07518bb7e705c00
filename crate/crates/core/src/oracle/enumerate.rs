use crate::error::{HcError, Result};
use crate::graph::DissimilarityGraph;
use crate::tree::{ClusterTree, NodeId, TreeBuilder};

/// Largest `n` accepted by exhaustive tree enumeration.
pub const ENUMERATION_LIMIT: usize = 9;

/// Number of rooted binary trees with `n` labeled leaves: `(2n − 3)!!`.
pub fn tree_count(n: usize) -> u64 {
    (2..n).map(|k| (2 * k - 1) as u64).product()
}

const NONE: usize = usize::MAX;

/// Mutable tree on leaves `0..n` and internal nodes `n..`, grown by grafting.
struct Grower {
    n: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    parent: Vec<usize>,
    root: usize,
}

impl Grower {
    fn to_tree(&self) -> ClusterTree {
        fn build(g: &Grower, id: usize, b: &mut TreeBuilder) -> NodeId {
            if id < g.n {
                return b.leaf(id);
            }
            let l = build(g, g.left[id], b);
            let r = build(g, g.right[id], b);
            b.join(l, r)
        }
        let mut b = TreeBuilder::with_capacity(self.n);
        let root = build(self, self.root, &mut b);
        b.finish(root).expect("grafted tree is valid")
    }

    /// Puts a new internal node `m` with children `(x, leaf)` in place of `x`.
    fn graft(&mut self, x: usize, leaf: usize, m: usize) {
        let p = self.parent[x];
        self.left[m] = x;
        self.right[m] = leaf;
        self.parent[m] = p;
        self.parent[x] = m;
        self.parent[leaf] = m;
        if p == NONE {
            self.root = m;
        } else if self.left[p] == x {
            self.left[p] = m;
        } else {
            self.right[p] = m;
        }
    }

    fn ungraft(&mut self, x: usize, leaf: usize, m: usize) {
        let p = self.parent[m];
        self.parent[x] = p;
        self.parent[leaf] = NONE;
        if p == NONE {
            self.root = x;
        } else if self.left[p] == m {
            self.left[p] = x;
        } else {
            self.right[p] = x;
        }
    }

    fn walk(&mut self, next: usize, f: &mut dyn FnMut(&ClusterTree)) {
        if next == self.n {
            f(&self.to_tree());
            return;
        }
        let m = self.n + next - 1;
        let attach: Vec<usize> = (0..next).chain(self.n..m).collect();
        for x in attach {
            self.graft(x, next, m);
            self.walk(next + 1, f);
            self.ungraft(x, next, m);
        }
    }
}

/// Calls `f` once for every rooted binary tree on leaves `0..n` (trees that
/// differ only by swapping children count once). Returns the number of trees.
///
/// Each tree on `0..k+1` arises from exactly one tree on `0..k` by grafting
/// leaf `k` above exactly one node.
pub fn for_each_tree(n: usize, mut f: impl FnMut(&ClusterTree)) -> Result<u64> {
    if n == 0 {
        return Err(HcError::InvalidArgument(
            "trees need at least one leaf".into(),
        ));
    }
    if n > ENUMERATION_LIMIT {
        return Err(HcError::BudgetExceeded {
            what: "tree enumeration leaf count",
            size: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let slots = 2 * n - 1;
    let mut g = Grower {
        n,
        left: vec![NONE; slots],
        right: vec![NONE; slots],
        parent: vec![NONE; slots],
        root: 0,
    };
    let mut count = 0u64;
    g.walk(1, &mut |t| {
        count += 1;
        f(t)
    });
    Ok(count)
}

/// Optima found by scanning every tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumeratedOptima {
    pub rev: f64,
    pub cost: f64,
    pub cost_h: f64,
}

/// Per-tree `(|T_ij|, H_ij)` for every pair, so a graph on `n` vertices can be
/// scored against all trees without rebuilding them.
#[derive(Debug, Clone)]
pub struct TopologyTable {
    n: usize,
    pairs: usize,
    sizes: Vec<u8>,
    depths: Vec<u8>,
}

impl TopologyTable {
    pub fn new(n: usize) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        let mut sizes = Vec::new();
        let mut depths = Vec::new();
        let mut row_s = vec![0u8; pairs];
        let mut row_d = vec![0u8; pairs];
        for_each_tree(n, |t| {
            t.for_each_separated_pair(|a, b, size, depth| {
                let (i, j) = if a < b { (a, b) } else { (b, a) };
                let k = pair_index(n, i, j);
                row_s[k] = size as u8;
                row_d[k] = depth as u8;
            });
            sizes.extend_from_slice(&row_s);
            depths.extend_from_slice(&row_d);
        })?;
        Ok(TopologyTable {
            n,
            pairs,
            sizes,
            depths,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> usize {
        self.sizes.len().checked_div(self.pairs).unwrap_or(1)
    }

    pub fn optima(&self, g: &DissimilarityGraph) -> Result<EnumeratedOptima> {
        if g.n() != self.n {
            return Err(HcError::InvalidArgument(format!(
                "graph has {} vertices, table {}",
                g.n(),
                self.n
            )));
        }
        let weights: Vec<f64> = g.pairs().map(|(_, _, w)| w).collect();
        if self.pairs == 0 {
            return Ok(EnumeratedOptima {
                rev: 0.0,
                cost: 0.0,
                cost_h: 0.0,
            });
        }
        let mut best = EnumeratedOptima {
            rev: f64::NEG_INFINITY,
            cost: f64::INFINITY,
            cost_h: f64::INFINITY,
        };
        for (sizes, depths) in self
            .sizes
            .chunks_exact(self.pairs)
            .zip(self.depths.chunks_exact(self.pairs))
        {
            let (mut by_size, mut by_depth) = (0.0, 0.0);
            for ((&w, &s), &d) in weights.iter().zip(sizes).zip(depths) {
                by_size += w * s as f64;
                by_depth += w * d as f64;
            }
            best.rev = best.rev.max(by_size);
            best.cost = best.cost.min(by_size);
            best.cost_h = best.cost_h.min(by_depth);
        }
        Ok(best)
    }
}

/// Position of `(i, j)`, `i < j`, in the order of [`DissimilarityGraph::pairs`].
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}
