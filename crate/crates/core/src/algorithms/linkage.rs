use crate::graph::DissimilarityGraph;
use crate::tree::{ClusterTree, NodeId, TreeBuilder};

struct Cluster {
    node: NodeId,
    min_vertex: usize,
    size: usize,
}

/// Agglomerative average linkage for dissimilarities: repeatedly merge the two
/// clusters with the smallest average inter-cluster weight.
///
/// Ties go to the pair whose `(min vertex, min vertex)` key is smallest. Runs
/// in O(n³) time with the pairwise inter-cluster sums kept up to date.
pub fn average_linkage_tree(g: &DissimilarityGraph) -> ClusterTree {
    let n = g.n();
    let mut b = TreeBuilder::with_capacity(n);
    let mut clusters: Vec<Option<Cluster>> = (0..n)
        .map(|v| {
            Some(Cluster {
                node: b.leaf(v),
                min_vertex: v,
                size: 1,
            })
        })
        .collect();
    let mut sums: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| g.weight(i, j)).collect())
        .collect();

    for _ in 1..n {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for a in 0..n {
            let Some(ca) = &clusters[a] else { continue };
            for c in (a + 1)..n {
                let Some(cc) = &clusters[c] else { continue };
                let avg = sums[a][c] / (ca.size * cc.size) as f64;
                let key = (
                    ca.min_vertex.min(cc.min_vertex),
                    ca.min_vertex.max(cc.min_vertex),
                );
                let better = match &best {
                    None => true,
                    Some((bavg, bkey, _, _)) => avg < *bavg || (avg == *bavg && key < *bkey),
                };
                if better {
                    best = Some((avg, key, a, c));
                }
            }
        }
        let (_, _, a, c) = best.expect("at least two clusters remain");
        let ca = clusters[a].take().expect("live");
        let cc = clusters[c].take().expect("live");
        let (first, second) = if ca.min_vertex < cc.min_vertex {
            (ca, cc)
        } else {
            (cc, ca)
        };
        let node = b.join(first.node, second.node);
        for x in 0..n {
            if clusters[x].is_some() {
                let s = sums[a][x] + sums[c][x];
                sums[a][x] = s;
                sums[x][a] = s;
            }
        }
        clusters[a] = Some(Cluster {
            node,
            min_vertex: first.min_vertex,
            size: first.size + second.size,
        });
    }

    let root = clusters
        .iter()
        .flatten()
        .next()
        .expect("one cluster left")
        .node;
    b.finish(root).expect("linkage yields a valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_ascending, gen_complete};
    use crate::tree::tree_to_text;

    #[test]
    fn small_cases() {
        let g = DissimilarityGraph::from_fn(2, |_, _| 1.0).unwrap();
        assert_eq!(tree_to_text(&average_linkage_tree(&g)), "(0,1)");
        let single = DissimilarityGraph::from_fn(1, |_, _| 1.0).unwrap();
        assert_eq!(tree_to_text(&average_linkage_tree(&single)), "0");
    }

    #[test]
    fn ascending_three_merges_low_pair_first() {
        let g = gen_ascending(3).unwrap();
        assert_eq!(tree_to_text(&average_linkage_tree(&g)), "((0,1),2)");
    }

    #[test]
    fn zero_graph_follows_tie_break() {
        let g = gen_complete(4, 0.0).unwrap();
        assert_eq!(tree_to_text(&average_linkage_tree(&g)), "(((0,1),2),3)");
    }

    #[test]
    fn ascending_graph_becomes_a_caterpillar() {
        let g = gen_ascending(9).unwrap();
        let order: Vec<_> = (0..9).rev().collect();
        assert_eq!(
            average_linkage_tree(&g),
            ClusterTree::caterpillar(&order).unwrap()
        );
    }

    #[test]
    fn merges_most_similar_first() {
        // Two tight groups {0,1,2} and {3,4} far apart.
        let g = DissimilarityGraph::from_fn(5, |i, j| if (i < 3) == (j < 3) { 1.0 } else { 10.0 })
            .unwrap();
        assert_eq!(tree_to_text(&average_linkage_tree(&g)), "(((0,1),2),(3,4))");
    }
}
