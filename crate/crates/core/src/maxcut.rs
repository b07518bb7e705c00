//! Weighted max-cut oracles over an induced vertex subset.
//!
//! Each oracle declares the fraction `α` of the optimum cut it is guaranteed
//! to reach. The exact solver (α = 1) enumerates bipartitions; the local
//! search (α = ½) is certified by single-flip optimality; the uniform random
//! cut only reaches ½ in expectation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HcError, Result};
use crate::graph::{DissimilarityGraph, Vertex};

/// Largest alive set the exact solver accepts.
pub const EXACT_CUT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Exact,
    LocalSearch,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutOracle {
    pub kind: SolverKind,
    pub seed: u64,
}

impl CutOracle {
    pub fn exact() -> Self {
        Self {
            kind: SolverKind::Exact,
            seed: 0,
        }
    }

    pub fn local_search(seed: u64) -> Self {
        Self {
            kind: SolverKind::LocalSearch,
            seed,
        }
    }

    pub fn random(seed: u64) -> Self {
        Self {
            kind: SolverKind::Random,
            seed,
        }
    }

    /// Exact when every cut on an `n`-vertex graph fits the enumeration budget.
    pub fn auto_for(n: usize, seed: u64) -> Self {
        if n <= EXACT_CUT_LIMIT {
            Self::exact()
        } else {
            Self::local_search(seed)
        }
    }

    pub fn declared_ratio(&self) -> f64 {
        match self.kind {
            SolverKind::Exact => 1.0,
            SolverKind::LocalSearch | SolverKind::Random => 0.5,
        }
    }

    /// False for the random cut, whose ratio holds only in expectation.
    pub fn is_worst_case_certified(&self) -> bool {
        !matches!(self.kind, SolverKind::Random)
    }

    pub fn cut(&self, g: &DissimilarityGraph, alive: &[Vertex]) -> Result<Cut> {
        match self.kind {
            SolverKind::Exact => max_cut_exact(g, alive),
            SolverKind::LocalSearch => max_cut_local_search(g, alive, self.seed),
            SolverKind::Random => random_cut(g, alive, self.seed),
        }
    }
}

/// A bipartition of an alive set. `left` always holds the first alive vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    pub weight: f64,
}

impl Cut {
    fn from_sides(g: &DissimilarityGraph, alive: &[Vertex], on_right: &[bool]) -> Self {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&v, &r) in alive.iter().zip(on_right) {
            if r {
                right.push(v);
            } else {
                left.push(v);
            }
        }
        let weight = g.cross_weight(&left, &right);
        Self {
            left,
            right,
            weight,
        }
    }
}

fn check_alive(g: &DissimilarityGraph, alive: &[Vertex]) -> Result<()> {
    if alive.len() < 2 {
        return Err(HcError::Domain(format!(
            "a cut needs at least two vertices, got {}",
            alive.len()
        )));
    }
    let mut seen = vec![false; g.n()];
    for &v in alive {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return Err(HcError::Domain(format!(
                "alive set has a bad or repeated vertex {v}"
            )));
        }
    }
    Ok(())
}

/// Split used whenever the alive set carries no weight at all.
fn balanced_split(g: &DissimilarityGraph, alive: &[Vertex]) -> Cut {
    let half = alive.len().div_ceil(2);
    let on_right: Vec<bool> = (0..alive.len()).map(|k| k >= half).collect();
    Cut::from_sides(g, alive, &on_right)
}

/// Exhaustive search over all `2^(k-1) - 1` bipartitions of `k` alive vertices.
///
/// Among maximum cuts the lexicographically smallest side assignment (in
/// alive order, left < right, first vertex on the left) wins.
pub fn max_cut_exact(g: &DissimilarityGraph, alive: &[Vertex]) -> Result<Cut> {
    check_alive(g, alive)?;
    let k = alive.len();
    if k > EXACT_CUT_LIMIT {
        return Err(HcError::BudgetExceeded {
            what: "exact max-cut alive set",
            size: k,
            limit: EXACT_CUT_LIMIT,
        });
    }
    if g.internal_weight(alive) == 0.0 {
        return Ok(balanced_split(g, alive));
    }

    let w: Vec<Vec<f64>> = alive
        .iter()
        .map(|&a| alive.iter().map(|&b| g.weight(a, b)).collect())
        .collect();

    // Gray-code walk over bits 1..k (bit 0 pinned to the left side).
    let free = k - 1;
    let mut mask: u32 = 0;
    let mut weight = 0.0;
    let mut best: Option<(f64, u32)> = None;
    let lex_key = |m: u32| m.reverse_bits() >> (32 - k as u32);
    for step in 1u32..(1u32 << free) {
        let bit = step.trailing_zeros() as usize + 1;
        let mut delta = 0.0;
        for (u, row) in w[bit].iter().enumerate() {
            if u == bit {
                continue;
            }
            let same_side = (mask >> u) & 1 == (mask >> bit) & 1;
            delta += if same_side { *row } else { -*row };
        }
        mask ^= 1 << bit;
        weight += delta;
        match best {
            Some((bw, bm)) if weight < bw || (weight == bw && lex_key(mask) >= lex_key(bm)) => {}
            _ => best = Some((weight, mask)),
        }
    }
    let (_, mask) = best.expect("at least one proper bipartition");
    let on_right: Vec<bool> = (0..k).map(|b| (mask >> b) & 1 == 1).collect();
    Ok(Cut::from_sides(g, alive, &on_right))
}

/// Greedy placement followed by first-improvement single flips.
///
/// Vertices are inserted by decreasing weighted degree within `alive` and put
/// on the side they are less connected to. `seed` only permutes the order in
/// which equal-degree vertices are inserted and in which flips are tried.
pub fn max_cut_local_search(g: &DissimilarityGraph, alive: &[Vertex], seed: u64) -> Result<Cut> {
    check_alive(g, alive)?;
    let total = g.internal_weight(alive);
    if total == 0.0 {
        return Ok(balanced_split(g, alive));
    }
    let k = alive.len();
    let w: Vec<Vec<f64>> = alive
        .iter()
        .map(|&a| alive.iter().map(|&b| g.weight(a, b)).collect())
        .collect();
    let degree: Vec<f64> = w.iter().map(|row| row.iter().sum()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut rng);
    order.sort_by(|&a, &b| degree[b].total_cmp(&degree[a]));

    // Greedy construction.
    let mut side = vec![None::<bool>; k];
    for &v in &order {
        let (mut to_left, mut to_right) = (0.0, 0.0);
        for (u, s) in side.iter().enumerate() {
            match s {
                Some(false) => to_left += w[v][u],
                Some(true) => to_right += w[v][u],
                None => {}
            }
        }
        side[v] = Some(to_left > to_right);
    }
    let mut on_right: Vec<bool> = side.into_iter().map(|s| s.expect("placed")).collect();
    if on_right.iter().all(|&r| r) || on_right.iter().all(|&r| !r) {
        let last = *order.last().expect("k >= 2");
        on_right[last] = !on_right[last];
    }

    // gain[v] = (same-side weight) - (cross weight): the change from flipping v.
    let mut gain: Vec<f64> = (0..k)
        .map(|v| {
            (0..k)
                .filter(|&u| u != v)
                .map(|u| {
                    if on_right[u] == on_right[v] {
                        w[v][u]
                    } else {
                        -w[v][u]
                    }
                })
                .sum()
        })
        .collect();
    let tolerance = 1e-12 * total;
    loop {
        order.shuffle(&mut rng);
        let mut improved = false;
        for &v in &order {
            if gain[v] > tolerance {
                on_right[v] = !on_right[v];
                gain[v] = -gain[v];
                for u in 0..k {
                    if u != v {
                        let same = on_right[u] == on_right[v];
                        gain[u] += if same { 2.0 * w[u][v] } else { -2.0 * w[u][v] };
                    }
                }
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    if on_right[0] {
        on_right.iter_mut().for_each(|r| *r = !*r);
    }
    let cut = Cut::from_sides(g, alive, &on_right);
    if cut.weight + 1e-9 * total < 0.5 * total {
        return Err(HcError::Invariant(format!(
            "local search cut {} below half of alive weight {total}",
            cut.weight
        )));
    }
    Ok(cut)
}

/// Independent fair coin per vertex, resampled until both sides are nonempty.
pub fn random_cut(g: &DissimilarityGraph, alive: &[Vertex], seed: u64) -> Result<Cut> {
    check_alive(g, alive)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut on_right: Vec<bool> = (0..alive.len()).map(|_| rng.random()).collect();
        if on_right.iter().any(|&r| r) && on_right.iter().any(|&r| !r) {
            if on_right[0] {
                on_right.iter_mut().for_each(|r| *r = !*r);
            }
            return Ok(Cut::from_sides(g, alive, &on_right));
        }
    }
}
