//! Test instance family: one graph per isomorphism class for small n, plus
//! seeded random graphs.
//!
//! Classes are grown vertex by vertex. Every class on `k - 1` vertices is
//! extended by each weight vector for the new vertex, and the result is
//! reduced to a canonical form: vertices are colour-refined, then the
//! lexicographically smallest upper triangle over colour-preserving
//! orderings is kept.

use std::collections::BTreeSet;

use hc_core::graph::gen_random;
use hc_core::DissimilarityGraph;

pub struct Instance {
    pub label: String,
    pub graph: DissimilarityGraph,
}

/// Upper triangle, row-major, one byte per pair.
type Code = Vec<u8>;

fn pair(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn weight(code: &[u8], n: usize, i: usize, j: usize) -> u8 {
    code[pair(n, i, j)]
}

/// Stable colour refinement; colours are ranks of sorted signatures.
fn refine(code: &[u8], n: usize) -> Vec<usize> {
    let mut colour = vec![0usize; n];
    loop {
        let sigs: Vec<(usize, Vec<(u8, usize)>)> = (0..n)
            .map(|v| {
                let mut around: Vec<(u8, usize)> = (0..n)
                    .filter(|&u| u != v)
                    .map(|u| (weight(code, n, v, u), colour[u]))
                    .collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let distinct: BTreeSet<_> = sigs.iter().collect();
        let ranked: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| ranked.binary_search(&s).expect("present"))
            .collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if after == before {
            return colour;
        }
    }
}

fn canonical(code: &[u8], n: usize) -> Code {
    let colour = refine(code, n);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&v| colour[v]);
    let slot_colour: Vec<usize> = slots.iter().map(|&v| colour[v]).collect();

    let mut best: Option<Code> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn search(
        code: &[u8],
        n: usize,
        colour: &[usize],
        slot_colour: &[usize],
        order: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<Code>,
    ) {
        if order.len() == n {
            let mut out = Vec::with_capacity(code.len());
            for a in 0..n {
                for b in (a + 1)..n {
                    out.push(weight(code, n, order[a], order[b]));
                }
            }
            if best.as_ref().is_none_or(|b| out < *b) {
                *best = Some(out);
            }
            return;
        }
        let want = slot_colour[order.len()];
        for v in 0..n {
            if !used[v] && colour[v] == want {
                used[v] = true;
                order.push(v);
                search(code, n, colour, slot_colour, order, used, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    search(
        code,
        n,
        &colour,
        &slot_colour,
        &mut order,
        &mut used,
        &mut best,
    );
    best.expect("at least one ordering")
}

/// One representative per isomorphism class of complete graphs on `n`
/// vertices with weights in `0..=max_weight`.
pub fn isomorphism_classes(n: usize, max_weight: u8) -> Vec<Code> {
    let mut classes: Vec<Code> = vec![Vec::new()];
    for k in 2..=n {
        let mut next = BTreeSet::new();
        let choices = (max_weight as usize + 1).pow((k - 1) as u32);
        for base in &classes {
            for mut x in 0..choices {
                let mut new_col = Vec::with_capacity(k - 1);
                for _ in 0..(k - 1) {
                    new_col.push((x % (max_weight as usize + 1)) as u8);
                    x /= max_weight as usize + 1;
                }
                let mut code = Vec::with_capacity(k * (k - 1) / 2);
                #[allow(clippy::needless_range_loop)]
                for i in 0..k {
                    for j in (i + 1)..k {
                        code.push(if j == k - 1 {
                            new_col[i]
                        } else {
                            weight(base, k - 1, i, j)
                        });
                    }
                }
                next.insert(canonical(&code, k));
            }
        }
        classes = next.into_iter().collect();
    }
    classes
}

fn graph_from_code(code: &[u8], n: usize) -> DissimilarityGraph {
    DissimilarityGraph::from_fn(n, |i, j| weight(code, n, i, j) as f64).expect("valid weights")
}

/// Isomorphism classes with weights in {0,1,2} for 2 ≤ n ≤ 6, {0,1} classes
/// for n = 7, then `random` seeded graphs with 2 ≤ n ≤ 10 and weights in 0..=3.
pub fn instance_family(random: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 2..=6 {
        for (k, code) in isomorphism_classes(n, 2).iter().enumerate() {
            out.push(Instance {
                label: format!("iso3-n{n}-#{k}"),
                graph: graph_from_code(code, n),
            });
        }
    }
    for (k, code) in isomorphism_classes(7, 1).iter().enumerate() {
        out.push(Instance {
            label: format!("iso2-n7-#{k}"),
            graph: graph_from_code(code, 7),
        });
    }
    for s in 0..random {
        let n = 2 + (s % 9);
        out.push(Instance {
            label: format!("random-n{n}-seed{s}"),
            graph: gen_random(n, 3, s as u64).expect("valid"),
        });
    }
    out
}
