use serde::{Deserialize, Serialize};

use super::peel::{peel_off_max_cut_or_random, PeelOffDiagnostics};
use super::random::random_partition_tree;
use super::schedule::ParameterTriple;
use crate::error::{invalid, Result};
use crate::graph::DissimilarityGraph;
use crate::maxcut::CutOracle;
use crate::tree::{rev_dissim, ClusterTree};

/// SplitMix64 finalizer over `(base, stream, index)`, so every candidate run
/// gets its own reproducible seed.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const RANDOM_STREAM: u64 = 1;
const PEEL_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateKind {
    Random,
    Peeloff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub kind: CandidateKind,
    /// Trial number for random runs, schedule row for peel-off runs.
    pub index: usize,
    pub seed: u64,
    pub revenue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<PeelOffDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub best: usize,
    pub revenue: f64,
    pub candidates: Vec<Candidate>,
}

/// Runs `trials` random partitions plus one peel-off run per schedule row and
/// keeps the tree with the largest revenue. Ties keep the earliest candidate:
/// random trials come first, then schedule rows in order.
pub fn ensemble_best_of(
    g: &DissimilarityGraph,
    schedule: &[ParameterTriple],
    oracle: &CutOracle,
    seed: u64,
    trials: usize,
) -> Result<(ClusterTree, EnsembleReport)> {
    if schedule.is_empty() {
        return invalid("ensemble needs a nonempty parameter schedule");
    }
    let mut best: Option<(f64, ClusterTree, usize)> = None;
    let mut candidates = Vec::with_capacity(trials + schedule.len());
    let mut consider =
        |tree: ClusterTree, candidate: Candidate, best: &mut Option<(f64, ClusterTree, usize)>| {
            let idx = candidates.len();
            if best
                .as_ref()
                .is_none_or(|(rev, _, _)| candidate.revenue > *rev)
            {
                *best = Some((candidate.revenue, tree, idx));
            }
            candidates.push(candidate);
        };

    for t in 0..trials {
        let run_seed = derive_seed(seed, RANDOM_STREAM, t as u64);
        let tree = random_partition_tree(g, run_seed);
        let revenue = rev_dissim(g, &tree)?;
        let c = Candidate {
            kind: CandidateKind::Random,
            index: t,
            seed: run_seed,
            revenue,
            r_star: None,
            gamma: None,
            diagnostics: None,
        };
        consider(tree, c, &mut best);
    }
    for (k, triple) in schedule.iter().enumerate() {
        let run_seed = derive_seed(seed, PEEL_STREAM, k as u64);
        let (tree, diagnostics) =
            peel_off_max_cut_or_random(g, triple.r_star, triple.gamma, oracle, run_seed)?;
        let revenue = rev_dissim(g, &tree)?;
        let c = Candidate {
            kind: CandidateKind::Peeloff,
            index: k,
            seed: run_seed,
            revenue,
            r_star: Some(triple.r_star),
            gamma: Some(triple.gamma),
            diagnostics: Some(diagnostics),
        };
        consider(tree, c, &mut best);
    }

    let (revenue, tree, best) = best.expect("at least one candidate");
    Ok((
        tree,
        EnsembleReport {
            best,
            revenue,
            candidates,
        },
    ))
}
