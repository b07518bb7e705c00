//! Peel-off first, then max-cut or random partitioning.
//!
//! Phase one repeatedly removes the surviving vertex with the largest current
//! weighted degree `W_v` while that degree is at least `γ·2W/n`. `W` and `n`
//! stay at their initial values; `W_v` is recomputed after every removal.
//! The peeled ("red") vertices form the top spine of the tree. Phase two
//! looks at the red weight fraction `R = W_R / W`: above `R*` the survivors
//! are randomly partitioned, otherwise one oracle max-cut splits them and
//! each side is randomly partitioned.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random::random_partition_subtree;
use crate::error::{invalid, HcError, Result};
use crate::graph::{DissimilarityGraph, Vertex};
use crate::maxcut::CutOracle;
use crate::tree::{ClusterTree, TreeBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecondPhase {
    Random,
    Maxcut,
}

/// One removal in the peel-off phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeelStep {
    pub vertex: Vertex,
    /// `W_v` at the moment of removal.
    pub degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelOffDiagnostics {
    /// Peeled fraction `|V_R| / n`.
    pub ell: f64,
    /// Red weight fraction `W_R / W` (0 when `W = 0`).
    pub big_r: f64,
    pub w_red: f64,
    /// Revenue earned by red edges: `Σ_i (n − i + 1) · W_{v_i}`.
    pub alg_p: f64,
    pub branch: SecondPhase,
    pub threshold: f64,
    pub gamma: f64,
    pub r_star: f64,
    pub n: usize,
    pub total_weight: f64,
    pub peeled: Vec<PeelStep>,
}

impl PeelOffDiagnostics {
    /// Checks `ℓ ≤ R/(2γ)`, `ALG_P ≥ (1 − ℓ/2)·n·W_R`, the branch rule, and
    /// that every logged removal cleared the threshold.
    pub fn verify(&self) -> Result<()> {
        let slack = 1e-9 * self.total_weight.max(1.0);
        let fail = |msg: String| Err(HcError::Invariant(msg));
        if self.ell > self.big_r / (2.0 * self.gamma) + 1e-12 {
            return fail(format!(
                "peeled fraction {} exceeds R/(2γ) = {}",
                self.ell,
                self.big_r / (2.0 * self.gamma)
            ));
        }
        let lower = (1.0 - self.ell / 2.0) * self.n as f64 * self.w_red;
        if self.alg_p + slack * (self.n as f64) < lower {
            return fail(format!(
                "peel revenue {} below (1-ℓ/2)nW_R = {lower}",
                self.alg_p
            ));
        }
        let expect_maxcut = self.big_r <= self.r_star;
        if expect_maxcut != (self.branch == SecondPhase::Maxcut) {
            return fail(format!(
                "branch {:?} inconsistent with R={} R*={}",
                self.branch, self.big_r, self.r_star
            ));
        }
        for step in &self.peeled {
            if step.degree < self.threshold {
                return fail(format!("vertex {} peeled below threshold", step.vertex));
            }
        }
        for pair in self.peeled.windows(2) {
            if pair[1].degree > pair[0].degree + slack {
                return fail("peel degrees are not non-increasing".to_string());
            }
        }
        Ok(())
    }

    /// Revenue from non-red edges, `Rev(T) − ALG_P`.
    pub fn remaining_revenue(&self, total_revenue: f64) -> f64 {
        total_revenue - self.alg_p
    }
}

pub fn peel_off_max_cut_or_random(
    g: &DissimilarityGraph,
    r_star: f64,
    gamma: f64,
    oracle: &CutOracle,
    seed: u64,
) -> Result<(ClusterTree, PeelOffDiagnostics)> {
    if !(r_star > 0.0 && r_star < 0.5) {
        return invalid(format!("R* must lie in (0, 1/2), got {r_star}"));
    }
    if gamma.is_nan() || gamma < 1.0 || gamma.is_infinite() {
        return invalid(format!("gamma must be >= 1, got {gamma}"));
    }
    let n = g.n();
    let total = g.total_weight();
    let threshold = gamma * 2.0 * total / n as f64;

    let mut alive = vec![true; n];
    let mut degree: Vec<f64> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v).map(|u| g.weight(v, u)).sum())
        .collect();
    let mut peeled = Vec::new();
    let mut remaining = n;

    // With W = 0 the threshold is 0 and every vertex would qualify; nothing is
    // gained by peeling, so the phase is skipped.
    if total > 0.0 {
        while remaining > 1 {
            let mut best: Option<Vertex> = None;
            for v in (0..n).filter(|&v| alive[v]) {
                if best.is_none_or(|b| degree[v] > degree[b]) {
                    best = Some(v);
                }
            }
            let v = best.expect("remaining > 1");
            if degree[v] < threshold {
                break;
            }
            peeled.push(PeelStep {
                vertex: v,
                degree: degree[v],
            });
            alive[v] = false;
            remaining -= 1;
            for u in (0..n).filter(|&u| alive[u]) {
                degree[u] -= g.weight(u, v);
            }
        }
    }

    let w_red: f64 = peeled.iter().map(|s| s.degree).sum();
    let alg_p: f64 = peeled
        .iter()
        .enumerate()
        .map(|(i, s)| (n - i) as f64 * s.degree)
        .sum();
    let big_r = if total > 0.0 { w_red / total } else { 0.0 };
    let blue: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = TreeBuilder::with_capacity(n);
    let branch = if big_r > r_star {
        SecondPhase::Random
    } else {
        SecondPhase::Maxcut
    };
    let mut node = if blue.len() < 2 {
        b.leaf(blue[0])
    } else {
        match branch {
            SecondPhase::Random => random_partition_subtree(&mut b, &blue, &mut rng),
            SecondPhase::Maxcut => {
                let cut = oracle.cut(g, &blue)?;
                let l = random_partition_subtree(&mut b, &cut.left, &mut rng);
                let r = random_partition_subtree(&mut b, &cut.right, &mut rng);
                b.join(l, r)
            }
        }
    };
    for step in peeled.iter().rev() {
        let leaf = b.leaf(step.vertex);
        node = b.join(leaf, node);
    }
    let tree = b.finish(node)?;

    let diagnostics = PeelOffDiagnostics {
        ell: peeled.len() as f64 / n as f64,
        big_r,
        w_red,
        alg_p,
        branch,
        threshold,
        gamma,
        r_star,
        n,
        total_weight: total,
        peeled,
    };
    diagnostics.verify()?;
    Ok((tree, diagnostics))
}
