use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DissimilarityGraph, Vertex};
use crate::tree::{ClusterTree, NodeId, TreeBuilder};

/// Recursively splits `vertices` by independent fair coins, resampling any
/// coin vector that leaves a side empty.
pub(crate) fn random_partition_subtree(
    builder: &mut TreeBuilder,
    vertices: &[Vertex],
    rng: &mut impl Rng,
) -> NodeId {
    match vertices {
        [] => unreachable!("empty cluster"),
        [v] => builder.leaf(*v),
        _ => {
            let (left, right) = loop {
                let (l, r): (Vec<Vertex>, Vec<Vertex>) =
                    vertices.iter().partition(|_| rng.random::<bool>());
                if !l.is_empty() && !r.is_empty() {
                    break (l, r);
                }
            };
            let l = random_partition_subtree(builder, &left, rng);
            let r = random_partition_subtree(builder, &right, rng);
            builder.join(l, r)
        }
    }
}

/// Random top-down partition tree on `0..n`. Deterministic in `seed`.
pub fn random_tree(n: usize, seed: u64) -> ClusterTree {
    assert!(n >= 1, "random_tree needs at least one leaf");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<Vertex> = (0..n).collect();
    let mut b = TreeBuilder::with_capacity(n);
    let root = random_partition_subtree(&mut b, &vertices, &mut rng);
    b.finish(root)
        .expect("random partition yields a valid tree")
}

/// Random partitioning on the vertices of `g`; its expected revenue is at
/// least `2nW/3`.
pub fn random_partition_tree(g: &DissimilarityGraph, seed: u64) -> ClusterTree {
    random_tree(g.n(), seed)
}
