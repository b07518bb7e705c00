//! Complete dissimilarity graphs with dense symmetric storage.
//!
//! Every unordered pair `{i, j}` carries a nonnegative weight; absent pairs
//! are simply weight zero. The graph is immutable once built.

mod generate;
mod io;

pub use generate::{
    gen_ascending, gen_complete, gen_cycle, gen_planted_clique, gen_random, gen_star,
};
pub use io::{format_weight, read_graph, read_graph_file, write_graph, write_graph_file};

use crate::error::{domain, invalid, Result};

/// Vertex identifier, `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityGraph {
    n: usize,
    /// Row-major upper triangle, pairs `(i, j)` with `i < j`.
    upper: Vec<f64>,
    total: f64,
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl DissimilarityGraph {
    /// Builds a graph by evaluating `weight(i, j)` for every pair `i < j`.
    pub fn from_fn(n: usize, mut weight: impl FnMut(Vertex, Vertex) -> f64) -> Result<Self> {
        if n == 0 {
            return invalid("graph must have at least one vertex");
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let w = weight(i, j);
                if !w.is_finite() || w < 0.0 {
                    return invalid(format!(
                        "weight of ({i},{j}) must be finite and >= 0, got {w}"
                    ));
                }
                upper.push(w);
            }
        }
        let total = upper.iter().sum();
        Ok(Self { n, upper, total })
    }

    /// Builds a graph from `(i, j, w)` triples. Unlisted pairs get weight 0.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, f64)>,
    ) -> Result<Self> {
        let mut g = Self::from_fn(n, |_, _| 0.0)?;
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return invalid(format!("edge ({i},{j}) out of range for n={n}"));
            }
            if i == j {
                return invalid(format!("self-loop on vertex {i}"));
            }
            if !w.is_finite() || w < 0.0 {
                return invalid(format!(
                    "weight of ({i},{j}) must be finite and >= 0, got {w}"
                ));
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            g.upper[tri_index(n, a, b)] = w;
        }
        g.total = g.upper.iter().sum();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cached sum of all pair weights, `W`.
    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// Weight of the pair `{i, j}`; zero on the diagonal.
    #[inline]
    pub fn weight(&self, i: Vertex, j: Vertex) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[tri_index(self.n, i, j)],
            std::cmp::Ordering::Greater => self.upper[tri_index(self.n, j, i)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Iterates over pairs `(i, j, w)` with `i < j` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.weight(i, j))))
    }

    /// Sum of `w(v, u)` over `u` in `alive`, `u != v`.
    ///
    /// `v` itself must be a member of `alive`.
    pub fn weighted_degree(&self, v: Vertex, alive: &[Vertex]) -> Result<f64> {
        if !alive.contains(&v) {
            return domain(format!("vertex {v} is not in the alive set"));
        }
        Ok(alive
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| self.weight(v, u))
            .sum())
    }

    /// Total weight of pairs with both endpoints in `set`.
    pub fn internal_weight(&self, set: &[Vertex]) -> f64 {
        let mut sum = 0.0;
        for (k, &a) in set.iter().enumerate() {
            for &b in &set[k + 1..] {
                sum += self.weight(a, b);
            }
        }
        sum
    }

    /// Total weight of pairs with one endpoint in `a` and the other in `b`.
    pub fn cross_weight(&self, a: &[Vertex], b: &[Vertex]) -> f64 {
        a.iter()
            .map(|&x| b.iter().map(|&y| self.weight(x, y)).sum::<f64>())
            .sum()
    }

    /// Recomputes `W` from scratch (the cached value is used everywhere else).
    pub fn recompute_total(&self) -> f64 {
        self.upper.iter().sum()
    }

    /// True when every weight is an exact integer, so objective arithmetic is exact.
    pub fn has_integer_weights(&self) -> bool {
        self.upper.iter().all(|w| w.fract() == 0.0 && *w < 9.0e15)
    }
}
