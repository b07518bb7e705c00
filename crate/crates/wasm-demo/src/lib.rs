//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use hc_core::algorithms::{
    average_linkage_tree, builtin_schedule, ensemble_best_of, f_of_r, generate_parameter_schedule,
    peel_off_max_cut_or_random, random_partition_tree, recursive_max_cut_tree,
};
use hc_core::graph::{
    gen_ascending, gen_cycle, gen_planted_clique, gen_random, gen_star, read_graph,
};
use hc_core::oracle::{opt_cost_h, opt_rev};
use hc_core::tree::{evaluate, tree_from_text, tree_to_text};
use hc_core::{ClusterTree, CutOracle, DissimilarityGraph, Objectives};

/// Largest graph the page solves exactly for the ratio columns.
const DEMO_ORACLE_LIMIT: usize = 12;
const DEMO_MAX_N: usize = 64;

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Serialize)]
struct CurvePoint {
    r: f64,
    f: f64,
}

#[derive(Serialize)]
struct CurveReport {
    gamma: f64,
    points: Vec<CurvePoint>,
    best: CurvePoint,
}

/// Samples `F(R)` on `[0, 1/2]` for a fixed `gamma`.
pub fn f_curve_json(gamma: f64, samples: usize) -> Result<String, String> {
    let samples = samples.clamp(2, 2000);
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let r = 0.5 * k as f64 / (samples - 1) as f64;
        points.push(CurvePoint {
            r,
            f: f_of_r(r, gamma).map_err(|e| e.to_string())?,
        });
    }
    let best = points
        .iter()
        .max_by(|a, b| a.f.total_cmp(&b.f))
        .map(|p| CurvePoint { r: p.r, f: p.f })
        .expect("at least two samples");
    Ok(to_json(&CurveReport {
        gamma,
        points,
        best,
    }))
}

pub fn schedule_json(alpha: f64, alpha_gw: f64) -> Result<String, String> {
    generate_parameter_schedule(alpha, alpha_gw)
        .map(|s| to_json(&s))
        .map_err(|e| e.to_string())
}

fn demo_graph(kind: &str, n: usize, eps: f64, seed: u64) -> Result<DissimilarityGraph, String> {
    if n > DEMO_MAX_N {
        return Err(format!("the demo is limited to {DEMO_MAX_N} vertices"));
    }
    match kind {
        "clique" => gen_planted_clique(n, eps),
        "ascending" => gen_ascending(n),
        "cycle" => gen_cycle(n, 1.0),
        "star" => gen_star(n, 1.0),
        "random" => gen_random(n, 9, seed),
        other => return Err(format!("unknown graph kind {other}")),
    }
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AlgorithmRow {
    algorithm: &'static str,
    tree: String,
    objectives: Objectives,
}

#[derive(Serialize)]
struct Comparison {
    n: usize,
    total_weight: f64,
    nw: f64,
    opt_rev: Option<f64>,
    opt_cost_h: Option<f64>,
    rows: Vec<AlgorithmRow>,
}

/// Runs every algorithm on one generated graph.
pub fn compare_json(
    kind: &str,
    n: usize,
    eps: f64,
    seed: u64,
    trials: usize,
) -> Result<String, String> {
    let g = demo_graph(kind, n, eps, seed)?;
    let oracle = CutOracle::auto_for(g.n(), seed);
    let err = |e: hc_core::HcError| e.to_string();
    let mut trees: Vec<(&'static str, ClusterTree)> = vec![
        ("random", random_partition_tree(&g, seed)),
        ("avglink", average_linkage_tree(&g)),
        (
            "recmaxcut",
            recursive_max_cut_tree(&g, &oracle).map_err(err)?,
        ),
    ];
    let (peel, _) =
        peel_off_max_cut_or_random(&g, 0.227617, 1.442042, &oracle, seed).map_err(err)?;
    trees.push(("peeloff", peel));
    let (ens, _) =
        ensemble_best_of(&g, builtin_schedule(), &oracle, seed, trials.min(1000)).map_err(err)?;
    trees.push(("ensemble", ens));

    let small = g.n() <= DEMO_ORACLE_LIMIT;
    let rows = trees
        .into_iter()
        .map(|(algorithm, t)| {
            Ok(AlgorithmRow {
                algorithm,
                tree: tree_to_text(&t),
                objectives: evaluate(&g, &t).map_err(err)?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&Comparison {
        n: g.n(),
        total_weight: g.total_weight(),
        nw: g.n() as f64 * g.total_weight(),
        opt_rev: if small {
            Some(opt_rev(&g).map_err(err)?.0)
        } else {
            None
        },
        opt_cost_h: if small {
            Some(opt_cost_h(&g).map_err(err)?.0)
        } else {
            None
        },
        rows,
    }))
}

/// Evaluates a tree typed by the user on an edge-list graph.
pub fn evaluate_json(graph_text: &str, tree_text: &str) -> Result<String, String> {
    let g = read_graph(graph_text.as_bytes()).map_err(|e| e.to_string())?;
    let t = tree_from_text(tree_text.trim()).map_err(|e| e.to_string())?;
    evaluate(&g, &t)
        .map(|o| to_json(&o))
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn f_curve(gamma: f64, samples: usize) -> Result<String, JsValue> {
    f_curve_json(gamma, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn schedule(alpha: f64, alpha_gw: f64) -> Result<String, JsValue> {
    schedule_json(alpha, alpha_gw).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compare(
    kind: &str,
    n: usize,
    eps: f64,
    seed: u64,
    trials: usize,
) -> Result<String, JsValue> {
    compare_json(kind, n, eps, seed, trials).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn evaluate_tree(graph_text: &str, tree_text: &str) -> Result<String, JsValue> {
    evaluate_json(graph_text, tree_text).map_err(|e| JsValue::from_str(&e))
}
