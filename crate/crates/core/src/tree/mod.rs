//! Rooted binary hierarchies over the vertex set `0..n`.
//!
//! A [`ClusterTree`] is built bottom-up through a [`TreeBuilder`] and then
//! annotated once: every node knows its parent, its depth (the root has depth
//! 1), its leaf count and the contiguous range of its leaves in DFS order.
//! Pair queries and the objective evaluators all read from that annotation.

mod objective;
mod text;

pub use objective::{
    cost_dasgupta, cost_h, evaluate, rev_dissim, rev_dual, split_cost_h, Objectives,
};
pub use text::{tree_from_text, tree_to_text};

use crate::error::{domain, invalid, HcError, Result};
use crate::graph::Vertex;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Leaf(Vertex),
    Internal { left: NodeId, right: NodeId },
}

/// Arena for assembling a tree from leaves and joins.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    nodes: Vec<Node>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(leaves: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(2 * leaves),
        }
    }

    pub fn leaf(&mut self, v: Vertex) -> NodeId {
        self.nodes.push(Node::Leaf(v));
        self.nodes.len() - 1
    }

    pub fn join(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.nodes.push(Node::Internal { left, right });
        self.nodes.len() - 1
    }

    /// Validates the structure under `root` and annotates it.
    ///
    /// The leaves reachable from `root` must be exactly `0..k` for some `k`,
    /// each appearing once, and no node may be shared between two parents.
    pub fn finish(self, root: NodeId) -> Result<ClusterTree> {
        ClusterTree::annotate(self.nodes, root)
    }
}

#[derive(Debug, Clone)]
pub struct ClusterTree {
    nodes: Vec<Node>,
    root: NodeId,
    n: usize,
    parent: Vec<Option<NodeId>>,
    depth: Vec<u32>,
    /// `[start, end)` into `leaf_order`.
    range: Vec<(u32, u32)>,
    leaf_order: Vec<Vertex>,
    leaf_node: Vec<NodeId>,
}

impl ClusterTree {
    fn annotate(nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        if root >= nodes.len() {
            return invalid(format!("root {root} is not a node"));
        }
        let total = nodes.len();
        let mut parent = vec![None; total];
        let mut depth = vec![0u32; total];
        let mut range = vec![(0u32, 0u32); total];
        let mut visited = vec![false; total];
        let mut leaf_order = Vec::new();

        // Iterative DFS; `false` marks entry, `true` marks exit.
        let mut stack = vec![(root, false)];
        visited[root] = true;
        depth[root] = 1;
        while let Some((id, exiting)) = stack.pop() {
            match nodes[id] {
                Node::Leaf(v) => {
                    let at = leaf_order.len() as u32;
                    leaf_order.push(v);
                    range[id] = (at, at + 1);
                }
                Node::Internal { left, right } => {
                    if exiting {
                        range[id] = (range[left].0, range[right].1);
                        continue;
                    }
                    for child in [left, right] {
                        if child >= total {
                            return invalid(format!("node {id} points at missing child {child}"));
                        }
                        if visited[child] {
                            return invalid(format!("node {child} has more than one parent"));
                        }
                        visited[child] = true;
                        parent[child] = Some(id);
                        depth[child] = depth[id] + 1;
                    }
                    stack.push((id, true));
                    stack.push((right, false));
                    stack.push((left, false));
                }
            }
        }

        let n = leaf_order.len();
        let mut leaf_node = vec![usize::MAX; n];
        for (id, node) in nodes.iter().enumerate() {
            if !visited[id] {
                continue;
            }
            if let Node::Leaf(v) = *node {
                if v >= n {
                    return invalid(format!("leaf {v} out of range: leaves must be 0..{n}"));
                }
                if leaf_node[v] != usize::MAX {
                    return invalid(format!("leaf {v} appears twice"));
                }
                leaf_node[v] = id;
            }
        }

        Ok(Self {
            nodes,
            root,
            n,
            parent,
            depth,
            range,
            leaf_order,
            leaf_node,
        })
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id] {
            Node::Internal { left, right } => Some((left, right)),
            Node::Leaf(_) => None,
        }
    }

    /// Leaves under `id`, in DFS order.
    pub fn leaves(&self, id: NodeId) -> &[Vertex] {
        let (a, b) = self.range[id];
        &self.leaf_order[a as usize..b as usize]
    }

    pub fn size(&self, id: NodeId) -> usize {
        let (a, b) = self.range[id];
        (b - a) as usize
    }

    /// Depth counting the root as 1.
    pub fn depth(&self, id: NodeId) -> usize {
        self.depth[id] as usize
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    /// Internal nodes reachable from the root, in no particular order.
    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        let mut stack = vec![self.root];
        std::iter::from_fn(move || {
            while let Some(id) = stack.pop() {
                if let Node::Internal { left, right } = self.nodes[id] {
                    stack.push(right);
                    stack.push(left);
                    return Some(id);
                }
            }
            None
        })
    }

    /// Smallest leaf id under `id`; used for canonical child order.
    pub fn min_leaf(&self, id: NodeId) -> Vertex {
        *self.leaves(id).iter().min().expect("nonempty subtree")
    }

    fn lca(&self, i: Vertex, j: Vertex) -> Result<NodeId> {
        if i == j {
            return domain(format!("pair queries need distinct leaves, got {i} twice"));
        }
        if i >= self.n || j >= self.n {
            return domain(format!("leaf {} is not in the tree", i.max(j)));
        }
        let (mut a, mut b) = (self.leaf_node[i], self.leaf_node[j]);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root has a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root has a parent");
        }
        while a != b {
            a = self.parent[a].expect("non-root has a parent");
            b = self.parent[b].expect("non-root has a parent");
        }
        Ok(a)
    }

    /// `|T_ij|`: number of leaves under the least common ancestor of `i` and `j`.
    pub fn lca_subtree_size(&self, i: Vertex, j: Vertex) -> Result<usize> {
        self.lca(i, j).map(|id| self.size(id))
    }

    /// `H_ij`: number of common ancestors of `i` and `j`, root included.
    pub fn common_ancestor_count(&self, i: Vertex, j: Vertex) -> Result<usize> {
        self.lca(i, j).map(|id| self.depth(id))
    }

    /// Calls `f(a, b, size, depth)` once per unordered leaf pair, where the
    /// pair is separated at an internal node with `size` leaves at `depth`.
    pub fn for_each_separated_pair(&self, mut f: impl FnMut(Vertex, Vertex, usize, usize)) {
        for id in self.internal_nodes() {
            let (l, r) = self.children(id).expect("internal");
            let (size, depth) = (self.size(id), self.depth(id));
            for &a in self.leaves(l) {
                for &b in self.leaves(r) {
                    f(a, b, size, depth);
                }
            }
        }
    }

    /// Builds a tree over `0..n` where node `v` at step `k` is split off from
    /// the rest: `(order[0], (order[1], (... )))`.
    pub fn caterpillar(order: &[Vertex]) -> Result<Self> {
        let Some((&last, rest)) = order.split_last() else {
            return invalid("caterpillar needs at least one leaf");
        };
        let mut b = TreeBuilder::with_capacity(order.len());
        let mut node = b.leaf(last);
        for &v in rest.iter().rev() {
            let leaf = b.leaf(v);
            node = b.join(leaf, node);
        }
        b.finish(node)
    }

    /// Balanced tree splitting the id-ordered vertex list in halves.
    pub fn balanced(n: usize) -> Result<Self> {
        fn build(b: &mut TreeBuilder, lo: usize, hi: usize) -> NodeId {
            if hi - lo == 1 {
                return b.leaf(lo);
            }
            let mid = lo + (hi - lo).div_ceil(2);
            let l = build(b, lo, mid);
            let r = build(b, mid, hi);
            b.join(l, r)
        }
        if n == 0 {
            return invalid("balanced tree needs at least one leaf");
        }
        let mut b = TreeBuilder::with_capacity(n);
        let root = build(&mut b, 0, n);
        b.finish(root)
    }

    pub(crate) fn check_vertex_count(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(HcError::Domain(format!(
                "tree has {} leaves but the graph has {n} vertices",
                self.n
            )));
        }
        Ok(())
    }
}

impl PartialEq for ClusterTree {
    /// Structural equality up to child order.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && tree_to_text(self) == tree_to_text(other)
    }
}

impl Eq for ClusterTree {}

impl std::fmt::Display for ClusterTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&tree_to_text(self))
    }
}
