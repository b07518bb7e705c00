//! Experiment harness behind the `bench` subcommand.

use std::time::Instant;

use serde::Serialize;

use crate::algorithms::{
    average_linkage_tree, builtin_schedule, ensemble_best_of, recursive_max_cut_tree,
};
use crate::error::{invalid, HcError, Result};
use crate::graph::{gen_ascending, gen_planted_clique};
use crate::maxcut::CutOracle;
use crate::oracle::opt_rev;
use crate::tree::{cost_h, rev_dissim, tree_to_text, ClusterTree};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest clique instance for which the subset-DP optimum is included.
pub const CLIQUE_ORACLE_LIMIT: usize = 14;

/// Frozen column order of [`RunReport::to_csv`].
pub const CSV_COLUMNS: &str = "bench,family,n,eps,total_weight,algorithm,objective,value,ratio,ratio_basis,oracle_optimum,wall_ms";

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub family: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub total_weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmResult {
    pub algorithm: String,
    pub objective: String,
    pub value: f64,
    pub ratio: f64,
    /// What `ratio` divides by: `oracle`, `nW` or `balanced`.
    pub ratio_basis: String,
    pub tree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub instance: Instance,
    pub results: Vec<AlgorithmResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_optimum: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub bench: String,
    pub rows: Vec<BenchRow>,
}

impl RunReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_COLUMNS);
        out.push('\n');
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for row in &self.rows {
            let inst = &row.instance;
            for r in &row.results {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    self.bench,
                    inst.family,
                    inst.n,
                    opt(inst.eps),
                    inst.total_weight,
                    r.algorithm,
                    r.objective,
                    r.value,
                    r.ratio,
                    r.ratio_basis,
                    opt(row.oracle_optimum),
                    opt(r.wall_ms),
                ));
            }
        }
        out
    }

    /// Headline ratio of `algorithm` in each row, in row order.
    pub fn ratios(&self, algorithm: &str) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|row| {
                row.results
                    .iter()
                    .find(|r| r.algorithm == algorithm)
                    .map(|r| r.ratio)
            })
            .collect()
    }

    pub fn value(&self, row: usize, algorithm: &str) -> Option<f64> {
        self.rows
            .get(row)?
            .results
            .iter()
            .find(|r| r.algorithm == algorithm)
            .map(|r| r.value)
    }
}

/// Settings shared by the bench runs.
#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub seed: u64,
    pub trials: usize,
    /// Record wall-clock per run. Off by default so reports stay byte-stable.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            seed: 0,
            trials: 200,
            timing: false,
        }
    }
}

impl BenchConfig {
    fn timed<T>(&self, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
        let start = self.timing.then(Instant::now);
        let value = f()?;
        Ok((value, start.map(|s| s.elapsed().as_secs_f64() * 1e3)))
    }

    /// `cost_h` of average linkage over a balanced tree on the ascending family.
    pub fn avglink_blowup(&self, n_list: &[usize]) -> Result<RunReport> {
        if n_list.is_empty() {
            return invalid("n_list is empty");
        }
        let mut rows = Vec::with_capacity(n_list.len());
        for &n in n_list {
            let g = gen_ascending(n)?;
            let (avg, avg_ms) = self.timed(|| Ok(average_linkage_tree(&g)))?;
            let balanced = ClusterTree::balanced(n)?;
            let avg_cost = cost_h(&g, &avg)?;
            let bal_cost = cost_h(&g, &balanced)?;
            let result = |name: &str, value: f64, tree: &ClusterTree, wall_ms| AlgorithmResult {
                algorithm: name.to_string(),
                objective: "cost_h".to_string(),
                value,
                ratio: value / bal_cost,
                ratio_basis: "balanced".to_string(),
                tree: tree_to_text(tree),
                wall_ms,
            };
            rows.push(BenchRow {
                instance: Instance {
                    family: "ascending".to_string(),
                    n,
                    eps: None,
                    total_weight: g.total_weight(),
                },
                results: vec![
                    result("avglink", avg_cost, &avg, avg_ms),
                    result("balanced", bal_cost, &balanced, None),
                ],
                oracle_optimum: None,
            });
        }
        Ok(RunReport {
            schema: REPORT_SCHEMA,
            bench: "avglink-blowup".to_string(),
            rows,
        })
    }

    /// Revenue of recursive max-cut against the ensemble on a planted clique.
    ///
    /// Fails with an invariant error if the ensemble ends up below recursive
    /// max-cut.
    pub fn clique_separation(&self, n: usize, eps: f64) -> Result<RunReport> {
        let g = gen_planted_clique(n, eps)?;
        let oracle = CutOracle::auto_for(n, self.seed);
        let nw = n as f64 * g.total_weight();
        let oracle_optimum = if n <= CLIQUE_ORACLE_LIMIT {
            Some(opt_rev(&g)?.0)
        } else {
            None
        };
        let (basis, denom) = match oracle_optimum {
            Some(opt) => ("oracle", opt),
            None => ("nW", nw),
        };

        let (rmc, rmc_ms) = self.timed(|| recursive_max_cut_tree(&g, &oracle))?;
        let ((ens, _), ens_ms) = self
            .timed(|| ensemble_best_of(&g, builtin_schedule(), &oracle, self.seed, self.trials))?;
        let rmc_rev = rev_dissim(&g, &rmc)?;
        let ens_rev = rev_dissim(&g, &ens)?;
        if ens_rev < rmc_rev {
            return Err(HcError::Invariant(format!(
                "ensemble revenue {ens_rev} below recursive max-cut {rmc_rev}"
            )));
        }
        let result = |name: &str, value: f64, tree: &ClusterTree, wall_ms| AlgorithmResult {
            algorithm: name.to_string(),
            objective: "rev".to_string(),
            value,
            ratio: if denom > 0.0 { value / denom } else { 1.0 },
            ratio_basis: basis.to_string(),
            tree: tree_to_text(tree),
            wall_ms,
        };
        Ok(RunReport {
            schema: REPORT_SCHEMA,
            bench: "clique-separation".to_string(),
            rows: vec![BenchRow {
                instance: Instance {
                    family: "planted-clique".to_string(),
                    n,
                    eps: Some(eps),
                    total_weight: g.total_weight(),
                },
                results: vec![
                    result("recmaxcut", rmc_rev, &rmc, rmc_ms),
                    result("ensemble", ens_rev, &ens, ens_ms),
                ],
                oracle_optimum,
            }],
        })
    }
}

pub fn bench_avglink_blowup(n_list: &[usize]) -> Result<RunReport> {
    BenchConfig::default().avglink_blowup(n_list)
}

pub fn bench_clique_separation(n: usize, eps: f64) -> Result<RunReport> {
    BenchConfig::default().clique_separation(n, eps)
}
