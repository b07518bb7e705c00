use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DissimilarityGraph;
use crate::error::{invalid, Result};

/// Unit-weight clique on the first `floor(eps * n)` vertices, every other pair zero.
pub fn gen_planted_clique(n: usize, eps: f64) -> Result<DissimilarityGraph> {
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("eps must lie in (0,1), got {eps}"));
    }
    let k = (eps * n as f64).floor() as usize;
    if k < 2 {
        return invalid(format!("clique size floor({eps}*{n}) = {k} is below 2"));
    }
    DissimilarityGraph::from_fn(n, |i, j| if j < k && i < k { 1.0 } else { 0.0 })
}

/// `w(i, j) = j - 1` for `i < j` in 1-based numbering, i.e. `w(i, j) = j` 0-based.
///
/// Average linkage is forced into a caterpillar on this family, which is
/// Θ(n / log n) worse than a balanced tree under the common-ancestor cost.
pub fn gen_ascending(n: usize) -> Result<DissimilarityGraph> {
    if n < 2 {
        return invalid(format!("ascending graph needs n >= 2, got {n}"));
    }
    DissimilarityGraph::from_fn(n, |_, j| j as f64)
}

pub fn gen_complete(n: usize, weight: f64) -> Result<DissimilarityGraph> {
    DissimilarityGraph::from_fn(n, |_, _| weight)
}

pub fn gen_cycle(n: usize, weight: f64) -> Result<DissimilarityGraph> {
    if n < 3 {
        return invalid(format!("cycle needs n >= 3, got {n}"));
    }
    DissimilarityGraph::from_fn(n, |i, j| {
        if j == i + 1 || (i == 0 && j == n - 1) {
            weight
        } else {
            0.0
        }
    })
}

/// Star with center 0 and `n - 1` leaves.
pub fn gen_star(n: usize, weight: f64) -> Result<DissimilarityGraph> {
    if n < 2 {
        return invalid(format!("star needs n >= 2, got {n}"));
    }
    DissimilarityGraph::from_fn(n, |i, _| if i == 0 { weight } else { 0.0 })
}

/// Independent uniform integer weights in `0..=max_weight`.
pub fn gen_random(n: usize, max_weight: u32, seed: u64) -> Result<DissimilarityGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DissimilarityGraph::from_fn(n, |_, _| rng.random_range(0..=max_weight) as f64)
}
