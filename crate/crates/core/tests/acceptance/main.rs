//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

// `ensure!` negates float comparisons on purpose so NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod family;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hc_core::algorithms::{
    builtin_schedule, cost_h_ratio_bound, ensemble_best_of, f_of_r, generate_parameter_schedule,
    peel_off_max_cut_or_random, random_tree, recursive_max_cut_tree, SecondPhase, ALPHA_GW,
};
use hc_core::bench::{bench_avglink_blowup, bench_clique_separation};
use hc_core::graph::{gen_planted_clique, gen_random, write_graph_file};
use hc_core::oracle::{opt_cost, opt_cost_h, opt_rev, TopologyTable};
use hc_core::tree::{cost_h, evaluate, rev_dissim, split_cost_h, tree_to_text};
use hc_core::{ClusterTree, CutOracle, DissimilarityGraph};

use family::Instance;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, &'static str, fn(&Context) -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

struct Context {
    family: Vec<Instance>,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn table_one() -> Vec<[f64; 4]> {
    include_str!("../data/schedule_716.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().expect("number")).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

fn c1_schedule_regeneration(_: &Context) -> Check {
    let start = Instant::now();
    let s = generate_parameter_schedule(0.716, ALPHA_GW).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let rows = table_one();
    ensure!(s.triples.len() == 83, "got {} triples", s.triples.len());
    let mut worst = 0.0f64;
    for (i, (t, row)) in s.triples.iter().zip(&rows).enumerate() {
        let got = [t.r_star, t.gamma, t.f_value, t.epsilon];
        for c in 0..4 {
            let d = (got[c] - row[c]).abs();
            worst = worst.max(d);
            ensure!(
                d <= 1e-4,
                "row {} column {c}: {} vs {}",
                i + 1,
                got[c],
                row[c]
            );
        }
    }
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "83 rows, max abs deviation {worst:.2e}, {elapsed:.2?}"
    ))
}

fn c2_two_stage_example(_: &Context) -> Check {
    let s = generate_parameter_schedule(0.7, ALPHA_GW).map_err(|e| e.to_string())?;
    ensure!(
        s.stages.len() == 2 && s.triples.len() == 2,
        "expected two stages, got {}",
        s.stages.len()
    );
    let s1 = s.stages[0].best.ok_or("stage 1 infeasible")?;
    let s2 = s.stages[1].best.ok_or("stage 2 infeasible")?;
    let got = [
        s1.r_star,
        s1.gamma,
        s1.f_value,
        s.stages[1].epsilon,
        s2.r_star,
        s2.gamma,
        s2.f_value,
    ];
    let want = [
        0.173114, 1.314032, 0.682358, 0.02520285, 0.316719, 1.695292, 0.714896,
    ];
    for (k, (g, w)) in got.iter().zip(&want).enumerate() {
        ensure!(close(*g, *w, 1e-4), "component {k}: {g} vs {w}");
    }
    ensure!(s2.f_value >= 0.7, "stage 2 does not reach alpha");
    Ok(format!(
        "stage 1 ({:.6}, {:.6}, {:.6}), eps2 {:.8}, stage 2 ({:.6}, {:.6}, {:.6})",
        got[0], got[1], got[2], got[3], got[4], got[5], got[6]
    ))
}

fn c3_anchors(_: &Context) -> Check {
    let f = f_of_r(0.227617, 1.442042).map_err(|e| e.to_string())?;
    let b = cost_h_ratio_bound(0.8786).map_err(|e| e.to_string())?;
    let half = cost_h_ratio_bound(0.5).map_err(|e| e.to_string())?;
    ensure!(close(f, 0.6929, 1e-4), "F = {f}");
    ensure!(close(b, 1.3977, 5e-4), "bound(0.8786) = {b}");
    ensure!(half == 2.0, "bound(0.5) = {half}");
    Ok(format!(
        "F = {f:.6}, bound(0.8786) = {b:.5}, bound(0.5) = {half}"
    ))
}

fn c4_revenue_ratio(ctx: &Context) -> Check {
    let start = Instant::now();
    let schedule = builtin_schedule();
    let oracle = CutOracle::exact();
    let mut worst = (f64::INFINITY, String::new());
    for inst in &ctx.family {
        let g = &inst.graph;
        let (tree, report) =
            ensemble_best_of(g, schedule, &oracle, 0, 200).map_err(|e| e.to_string())?;
        let rev = rev_dissim(g, &tree).map_err(|e| e.to_string())?;
        ensure!(
            rev == report.revenue,
            "{}: report revenue mismatch",
            inst.label
        );
        let opt = opt_rev(g).map_err(|e| e.to_string())?.0;
        ensure!(
            rev >= 0.6929 * opt,
            "{}: rev {rev} < 0.6929 * opt {opt}",
            inst.label
        );
        if opt > 0.0 && rev / opt < worst.0 {
            worst = (rev / opt, inst.label.clone());
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!(
        "{} instances, min rev/opt {:.4} ({}), {elapsed:.1?}",
        ctx.family.len(),
        worst.0,
        worst.1
    ))
}

fn c5_cost_h_ratio(ctx: &Context) -> Check {
    let exact = CutOracle::exact();
    let local = CutOracle::local_search(0);
    let (mut worst_exact, mut worst_local) = (1.0f64, 1.0f64);
    for inst in &ctx.family {
        let g = &inst.graph;
        let opt = opt_cost_h(g).map_err(|e| e.to_string())?.0;
        let ex = cost_h(
            g,
            &recursive_max_cut_tree(g, &exact).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let ls = cost_h(
            g,
            &recursive_max_cut_tree(g, &local).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        // Integer weights: compare 3·alg ≤ 4·opt exactly.
        ensure!(
            3.0 * ex <= 4.0 * opt,
            "{}: exact cost_h {ex} > 4/3 * {opt}",
            inst.label
        );
        ensure!(
            ls <= 2.0 * opt,
            "{}: local-search cost_h {ls} > 2 * {opt}",
            inst.label
        );
        if opt > 0.0 {
            worst_exact = worst_exact.max(ex / opt);
            worst_local = worst_local.max(ls / opt);
        }
    }
    Ok(format!(
        "{} instances, max ratio exact {worst_exact:.4}, local search {worst_local:.4}",
        ctx.family.len()
    ))
}

fn c6_identities(_: &Context) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..1000 {
        let n = rng.random_range(1..=30);
        let g = gen_random(n, 100, rng.random()).map_err(|e| e.to_string())?;
        let t = random_tree(n, rng.random());
        let o = evaluate(&g, &t).map_err(|e| e.to_string())?;
        let nw = n as f64 * g.total_weight();
        ensure!(
            o.cost + o.rev_dual == nw,
            "pair {k}: cost + rev_dual = {} != nW = {nw}",
            o.cost + o.rev_dual
        );
        let mut splits = g.total_weight();
        for id in t.internal_nodes() {
            let (l, r) = t.children(id).expect("internal");
            splits += split_cost_h(&g, t.leaves(l), t.leaves(r)).map_err(|e| e.to_string())?;
        }
        ensure!(
            o.cost_h == splits,
            "pair {k}: cost_h {} != W + splits {splits}",
            o.cost_h
        );
    }
    Ok("1000 pairs, both identities exact".into())
}

/// Graph for peel-off run `k`: a mix of families that do and do not trigger peeling.
fn peel_graph(k: usize, rng: &mut ChaCha8Rng) -> DissimilarityGraph {
    let n = rng.random_range(4..=40);
    match (k / 16) % 4 {
        0 => gen_random(n, 9, rng.random()).expect("valid"),
        1 => {
            let eps = rng.random_range(0.25..0.7);
            gen_planted_clique(n.max(8), eps).expect("clique of size >= 2")
        }
        2 => {
            let hubs = rng.random_range(1..=3);
            let heavy = rng.random_range(5.0..50.0f64).round();
            let mut r = ChaCha8Rng::seed_from_u64(rng.random());
            DissimilarityGraph::from_fn(n, |i, _| {
                if i < hubs {
                    heavy
                } else {
                    r.random_range(0..=2) as f64
                }
            })
            .expect("valid")
        }
        _ => {
            let mut r = ChaCha8Rng::seed_from_u64(rng.random());
            DissimilarityGraph::from_fn(n, |i, j| {
                if i == 0 || r.random_range(0..10) == 0 {
                    (j % 5 + 1) as f64
                } else {
                    0.0
                }
            })
            .expect("valid")
        }
    }
}

fn c7_peel_diagnostics(_: &Context) -> Check {
    let gammas = [1.0, 1.2, 1.5, 2.0];
    let r_stars = [0.1, 0.2, 0.3, 0.4];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut peeled_runs, mut maxcut_runs) = (0, 0);
    for k in 0..1000 {
        let gamma = gammas[k % 4];
        let r_star = r_stars[(k / 4) % 4];
        let g = peel_graph(k, &mut rng);
        let oracle = CutOracle::auto_for(g.n(), k as u64);
        let (tree, d) = peel_off_max_cut_or_random(&g, r_star, gamma, &oracle, k as u64)
            .map_err(|e| format!("run {k}: {e}"))?;
        ensure!(
            d.ell <= d.big_r / (2.0 * gamma) + 1e-12,
            "run {k}: ell {} > R/(2γ) {}",
            d.ell,
            d.big_r / (2.0 * gamma)
        );
        let lower = (1.0 - d.ell / 2.0) * g.n() as f64 * d.w_red;
        ensure!(
            d.alg_p >= lower - 1e-9 * lower.abs(),
            "run {k}: ALG_P {} < {lower}",
            d.alg_p
        );
        ensure!(tree.n() == g.n(), "run {k}: tree size");
        if !d.peeled.is_empty() {
            peeled_runs += 1;
        }
        if d.branch == SecondPhase::Maxcut {
            maxcut_runs += 1;
        }
    }
    ensure!(peeled_runs > 100, "only {peeled_runs} runs peeled anything");
    Ok(format!(
        "1000 runs over 16 grid cells, {peeled_runs} with peeling, {maxcut_runs} max-cut branch, 0 violations"
    ))
}

fn c8_separations(_: &Context) -> Check {
    let blowup = bench_avglink_blowup(&[16, 64, 256]).map_err(|e| e.to_string())?;
    let ratios = blowup.ratios("avglink");
    ensure!(
        ratios.len() == 3 && ratios.windows(2).all(|w| w[1] > w[0]),
        "ratios not increasing: {ratios:?}"
    );
    let sep = bench_clique_separation(12, 1.0 / 3.0).map_err(|e| e.to_string())?;
    let rmc = sep.value(0, "recmaxcut").ok_or("missing recmaxcut")?;
    let ens = sep.value(0, "ensemble").ok_or("missing ensemble")?;
    let opt = sep.rows[0].oracle_optimum.ok_or("missing oracle optimum")?;
    let nw = 12.0 * sep.rows[0].instance.total_weight;
    ensure!(ens >= rmc, "ensemble {ens} < recursive max-cut {rmc}");
    ensure!(opt >= 0.6 * nw, "opt {opt} < 0.6 nW = {}", 0.6 * nw);
    Ok(format!(
        "avglink ratios {:.3} < {:.3} < {:.3}; clique n=12: recmaxcut {rmc}, ensemble {ens}, opt {opt}, nW {nw}",
        ratios[0], ratios[1], ratios[2]
    ))
}

fn c9_oracle_cross_validation(ctx: &Context) -> Check {
    let tables: Vec<TopologyTable> = (0..=8)
        .map(|n| TopologyTable::new(n.max(1)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut checked = 0;
    for inst in ctx.family.iter().filter(|i| i.graph.n() <= 8) {
        let g = &inst.graph;
        let brute = tables[g.n()].optima(g).map_err(|e| e.to_string())?;
        let rev = opt_rev(g).map_err(|e| e.to_string())?.0;
        let cost = opt_cost(g).map_err(|e| e.to_string())?.0;
        let ch = opt_cost_h(g).map_err(|e| e.to_string())?.0;
        ensure!(
            rev == brute.rev,
            "{}: rev DP {rev} vs enumeration {}",
            inst.label,
            brute.rev
        );
        ensure!(
            cost == brute.cost,
            "{}: cost DP {cost} vs enumeration {}",
            inst.label,
            brute.cost
        );
        ensure!(
            ch == brute.cost_h,
            "{}: cost_h DP {ch} vs enumeration {}",
            inst.label,
            brute.cost_h
        );
        checked += 1;
    }
    Ok(format!("{checked} graphs with n <= 8, 0 mismatches"))
}

fn hc(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hc"))
        .args(args)
        .output()
        .expect("spawn hc");
    (out.status.code(), out.stdout)
}

fn c10_determinism(_: &Context) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph = dir.path().join("g.el");
    let graph_s = graph.to_str().ok_or("non-UTF-8 temp path")?;
    let small = dir.path().join("small.el");
    write_graph_file(&gen_random(9, 4, 3).expect("valid"), &small).map_err(|e| e.to_string())?;
    let small_s = small.to_str().ok_or("non-UTF-8 temp path")?;
    let tree =
        tree_to_text(&ClusterTree::caterpillar(&(0..10).collect::<Vec<_>>()).expect("valid"));

    let commands: Vec<Vec<&str>> = vec![
        vec![
            "gen", "--kind", "clique", "--n", "10", "--eps", "0.4", "--out", graph_s,
        ],
        vec!["gen", "--kind", "random", "--n", "12", "--seed", "5"],
        vec!["eval", "--graph", graph_s, "--tree", &tree],
        vec!["run", "--algo", "random", "--graph", graph_s, "--seed", "3"],
        vec!["run", "--algo", "avglink", "--graph", graph_s],
        vec![
            "run", "--algo", "peeloff", "--graph", graph_s, "--seed", "4",
        ],
        vec![
            "run",
            "--algo",
            "recmaxcut",
            "--graph",
            small_s,
            "--solver",
            "local",
            "--seed",
            "2",
        ],
        vec![
            "run",
            "--algo",
            "ensemble",
            "--schedule",
            "builtin:716",
            "--graph",
            graph_s,
        ],
        vec![
            "run", "--algo", "ensemble", "--graph", small_s, "--trials", "50", "--format", "csv",
        ],
        vec!["schedule", "--alpha", "0.716", "--alpha-gw", "0.8786"],
        vec![
            "schedule",
            "--alpha",
            "0.716",
            "--alpha-gw",
            "0.8786",
            "--format",
            "csv",
        ],
        vec!["oracle", "--graph", small_s, "--objective", "rev"],
        vec!["oracle", "--graph", small_s, "--objective", "cost_h"],
        vec![
            "maxcut", "--graph", small_s, "--solver", "local", "--seed", "9",
        ],
        vec!["bench", "avglink", "--n-list", "8,16,32"],
        vec![
            "bench", "clique", "--n", "10", "--eps", "0.4", "--trials", "20",
        ],
    ];
    for args in &commands {
        let (code1, out1) = hc(args);
        let (code2, out2) = hc(args);
        ensure!(
            code1 == Some(0) && code2 == Some(0),
            "`hc {}` exited with {code1:?}/{code2:?}",
            args.join(" ")
        );
        ensure!(
            out1 == out2,
            "`hc {}` output differs between runs",
            args.join(" ")
        );
        ensure!(!out1.is_empty(), "`hc {}` printed nothing", args.join(" "));
    }
    let (_, csv) = hc(&commands[10]);
    let rows = String::from_utf8_lossy(&csv).lines().count();
    ensure!(rows == 84, "schedule CSV has {rows} lines");
    let (usage, _) = hc(&["run", "--no-such-flag"]);
    ensure!(usage == Some(2), "unknown flag exited with {usage:?}");
    Ok(format!(
        "{} commands byte-identical across two runs",
        commands.len()
    ))
}

fn main() {
    let start = Instant::now();
    let family = family::instance_family(2000);
    let counts: Vec<usize> = (2..=7)
        .map(|n| {
            family
                .iter()
                .filter(|i| i.label.starts_with("iso") && i.graph.n() == n)
                .count()
        })
        .collect();
    assert_eq!(
        counts,
        vec![3, 10, 66, 792, 25506, 1044],
        "isomorphism class counts"
    );
    println!(
        "instance family: {} graphs ({} isomorphism classes, 2000 random) built in {:.1?}",
        family.len(),
        counts.iter().sum::<usize>(),
        start.elapsed()
    );
    let ctx = Context { family };

    let criteria: [Criterion; 10] = [
        ("1", "schedule regeneration", c1_schedule_regeneration),
        ("2", "two-stage schedule example", c2_two_stage_example),
        ("3", "F and ratio-bound anchors", c3_anchors),
        ("4", "ensemble revenue ratio", c4_revenue_ratio),
        ("5", "recursive max-cut cost_h ratio", c5_cost_h_ratio),
        ("6", "objective identities", c6_identities),
        ("7", "peel-off diagnostics", c7_peel_diagnostics),
        ("8", "separations", c8_separations),
        ("9", "oracle cross-validation", c9_oracle_cross_validation),
        ("10", "CLI determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| check(&ctx))).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!(
                "PASS criterion {id:>2} {name}: {detail} [{:.1?}]",
                t.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {why} [{:.1?}]", t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, total {:.1?}",
        10 - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
