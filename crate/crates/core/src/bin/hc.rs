use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hc_core::algorithms::{
    average_linkage_tree, ensemble_best_of, generate_parameter_schedule, named_schedule,
    peel_off_max_cut_or_random, random_partition_tree, recursive_max_cut_tree, CandidateKind,
    ParameterTriple, ALPHA_GW,
};
use hc_core::bench::{BenchConfig, RunReport};
use hc_core::graph::{
    gen_ascending, gen_complete, gen_cycle, gen_planted_clique, gen_random, gen_star,
    read_graph_file, write_graph, write_graph_file,
};
use hc_core::oracle::{optimum, ObjectiveKind};
use hc_core::tree::{evaluate, tree_from_text, tree_to_text};
use hc_core::{ClusterTree, CutOracle, DissimilarityGraph, HcError};

const SCHEMA: u32 = 1;

/// Hierarchical clustering on dissimilarity graphs.
#[derive(Parser)]
#[command(name = "hc", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Evaluate a tree on a graph.
    Eval(EvalArgs),
    /// Build a tree with one of the clustering algorithms.
    Run(RunArgs),
    /// Generate a peel-off parameter schedule.
    Schedule(ScheduleArgs),
    /// Exact optimum of an objective for a small graph.
    Oracle(OracleArgs),
    /// Max-cut of the whole vertex set.
    Maxcut(MaxcutArgs),
    /// Run one of the separation experiments.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Clique,
    Ascending,
    Complete,
    Cycle,
    Star,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GraphKind,
    #[arg(long)]
    n: usize,
    /// Clique fraction for `clique`.
    #[arg(long)]
    eps: Option<f64>,
    /// Edge weight for `complete`, `cycle` and `star`.
    #[arg(long, default_value_t = 1.0)]
    weight: f64,
    /// Largest weight for `random`.
    #[arg(long, default_value_t = 9)]
    max_weight: u32,
    /// Write here instead of printing the edge list.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Tree in parenthesized text form, e.g. `((0,1),2)`.
    #[arg(
        long,
        conflicts_with = "tree_file",
        required_unless_present = "tree_file"
    )]
    tree: Option<String>,
    #[arg(long)]
    tree_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Random,
    Avglink,
    Peeloff,
    Ensemble,
    Recmaxcut,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    /// Exact up to 24 vertices, local search above.
    Auto,
    Exact,
    Local,
}

impl Solver {
    fn oracle(self, n: usize, seed: u64) -> CutOracle {
        match self {
            Solver::Auto => CutOracle::auto_for(n, seed),
            Solver::Exact => CutOracle::exact(),
            Solver::Local => CutOracle::local_search(seed),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, default_value_t = 0.227617)]
    r_star: f64,
    #[arg(long, default_value_t = 1.442042)]
    gamma: f64,
    /// Schedule CSV file or `builtin:716`.
    #[arg(long, default_value = "builtin:716")]
    schedule: String,
    /// Random-partition trials in the ensemble.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Solver::Auto)]
    solver: Solver,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long, default_value_t = 0.716)]
    alpha: f64,
    #[arg(long, default_value_t = ALPHA_GW)]
    alpha_gw: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Rev,
    Cost,
    #[value(name = "cost_h")]
    CostH,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    objective: Objective,
}

#[derive(Args)]
struct MaxcutArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Solver::Exact)]
    solver: Solver,
}

#[derive(Args)]
struct BenchArgs {
    #[command(subcommand)]
    which: BenchKind,
    /// Record wall-clock per run (makes the report non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum BenchKind {
    /// Average linkage against a balanced tree on the ascending family.
    Avglink {
        #[arg(long, value_delimiter = ',', default_value = "16,64,256")]
        n_list: Vec<usize>,
    },
    /// Recursive max-cut against the ensemble on a planted clique.
    Clique {
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Text emitted on stdout for one command.
enum Output {
    Json(Value),
    Csv(String),
    Raw(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Output::Csv(s) | Output::Raw(s) => s,
            };
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Ok(()) => ExitCode::SUCCESS,
                // A closed pipe (e.g. `| head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                HcError::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> hc_core::Result<Output> {
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(a) => gen(a, seed, cli.format),
        Command::Eval(a) => eval(a, cli.format),
        Command::Run(a) => run(a, seed, cli.format),
        Command::Schedule(a) => schedule(a, cli.format),
        Command::Oracle(a) => oracle(a, cli.format),
        Command::Maxcut(a) => maxcut(a, seed, cli.format),
        Command::Bench(a) => bench(a, seed, cli.format),
    }
}

fn load(path: &Path) -> hc_core::Result<DissimilarityGraph> {
    read_graph_file(path)
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn gen(a: &GenArgs, seed: u64, format: Format) -> hc_core::Result<Output> {
    let g = match a.kind {
        GraphKind::Clique => {
            let eps = a.eps.ok_or_else(|| {
                HcError::InvalidArgument("--eps is required for --kind clique".into())
            })?;
            gen_planted_clique(a.n, eps)?
        }
        GraphKind::Ascending => gen_ascending(a.n)?,
        GraphKind::Complete => gen_complete(a.n, a.weight)?,
        GraphKind::Cycle => gen_cycle(a.n, a.weight)?,
        GraphKind::Star => gen_star(a.n, a.weight)?,
        GraphKind::Random => gen_random(a.n, a.max_weight, seed)?,
    };
    let Some(out) = &a.out else {
        let mut buf = Vec::new();
        write_graph(&g, &mut buf)?;
        return Ok(Output::Raw(
            String::from_utf8(buf).expect("edge list is ASCII"),
        ));
    };
    write_graph_file(&g, out)?;
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "n": g.n(),
            "total_weight": g.total_weight(),
            "out": out.display().to_string(),
        })),
        Format::Csv => Output::Csv(format!(
            "n,total_weight,out\n{},{},{}\n",
            g.n(),
            g.total_weight(),
            out.display()
        )),
    })
}

fn eval(a: &EvalArgs, format: Format) -> hc_core::Result<Output> {
    let g = load(&a.graph)?;
    let text = match (&a.tree, &a.tree_file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p)?,
        (None, None) => unreachable!("clap requires one of --tree/--tree-file"),
    };
    let tree = tree_from_text(text.trim())?;
    let o = evaluate(&g, &tree)?;
    Ok(match format {
        Format::Json => Output::Json(to_value(&o)),
        Format::Csv => Output::Csv(format!(
            "cost,rev,rev_dual,cost_h\n{},{},{},{}\n",
            o.cost, o.rev, o.rev_dual, o.cost_h
        )),
    })
}

/// Reads a schedule CSV with header `r_star,gamma,f_value,epsilon`.
fn load_schedule(source: &str) -> hc_core::Result<Vec<ParameterTriple>> {
    if let Some(s) = named_schedule(source) {
        return Ok(s.to_vec());
    }
    if source.starts_with("builtin:") {
        return Err(HcError::InvalidArgument(format!(
            "unknown builtin schedule {source}"
        )));
    }
    let text = std::fs::read_to_string(source)?;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("r_star") {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| HcError::Parse {
                line: k + 1,
                message: e.to_string(),
            })?;
        let [r_star, gamma, f_value, epsilon] = v[..] else {
            return Err(HcError::Parse {
                line: k + 1,
                message: format!("expected 4 columns, got {}", v.len()),
            });
        };
        rows.push(ParameterTriple {
            r_star,
            gamma,
            f_value,
            epsilon,
        });
    }
    Ok(rows)
}

fn run(a: &RunArgs, seed: u64, format: Format) -> hc_core::Result<Output> {
    let g = load(&a.graph)?;
    let oracle = a.solver.oracle(g.n(), seed);
    let mut report = serde_json::Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("algo".into(), json!(algo_name(a.algo)));
    report.insert("seed".into(), json!(seed));
    let mut candidates = None;
    let tree: ClusterTree = match a.algo {
        Algo::Random => random_partition_tree(&g, seed),
        Algo::Avglink => average_linkage_tree(&g),
        Algo::Recmaxcut => {
            report.insert("oracle".into(), to_value(&oracle));
            recursive_max_cut_tree(&g, &oracle)?
        }
        Algo::Peeloff => {
            report.insert("oracle".into(), to_value(&oracle));
            let (t, d) = peel_off_max_cut_or_random(&g, a.r_star, a.gamma, &oracle, seed)?;
            report.insert("diagnostics".into(), to_value(&d));
            t
        }
        Algo::Ensemble => {
            report.insert("oracle".into(), to_value(&oracle));
            report.insert("schedule".into(), json!(a.schedule));
            report.insert("trials".into(), json!(a.trials));
            let schedule = load_schedule(&a.schedule)?;
            let (t, r) = ensemble_best_of(&g, &schedule, &oracle, seed, a.trials)?;
            report.insert("best".into(), json!(r.best));
            report.insert("candidates".into(), to_value(&r.candidates));
            candidates = Some(r.candidates);
            t
        }
    };
    let objectives = evaluate(&g, &tree)?;
    report.insert("tree".into(), json!(tree_to_text(&tree)));
    report.insert("objectives".into(), to_value(&objectives));
    Ok(match format {
        Format::Json => Output::Json(Value::Object(report)),
        Format::Csv => {
            let mut s = String::from("algo,cost,rev,rev_dual,cost_h,tree\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},\"{}\"",
                algo_name(a.algo),
                objectives.cost,
                objectives.rev,
                objectives.rev_dual,
                objectives.cost_h,
                tree_to_text(&tree)
            );
            if let Some(cands) = candidates {
                s.push_str("\nkind,index,seed,revenue,r_star,gamma,branch,ell,big_r\n");
                for c in cands {
                    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                    let kind = match c.kind {
                        CandidateKind::Random => "random",
                        CandidateKind::Peeloff => "peeloff",
                    };
                    let (branch, ell, big_r) = match &c.diagnostics {
                        Some(d) => (
                            serde_json::to_value(d.branch)
                                .expect("enum")
                                .as_str()
                                .unwrap_or("")
                                .to_string(),
                            d.ell.to_string(),
                            d.big_r.to_string(),
                        ),
                        None => Default::default(),
                    };
                    let _ = writeln!(
                        s,
                        "{kind},{},{},{},{},{},{branch},{ell},{big_r}",
                        c.index,
                        c.seed,
                        c.revenue,
                        opt(c.r_star),
                        opt(c.gamma)
                    );
                }
            }
            Output::Csv(s)
        }
    })
}

fn algo_name(a: Algo) -> &'static str {
    match a {
        Algo::Random => "random",
        Algo::Avglink => "avglink",
        Algo::Peeloff => "peeloff",
        Algo::Ensemble => "ensemble",
        Algo::Recmaxcut => "recmaxcut",
    }
}

fn schedule(a: &ScheduleArgs, format: Format) -> hc_core::Result<Output> {
    let s = generate_parameter_schedule(a.alpha, a.alpha_gw)?;
    for st in s.stages.iter().filter(|st| st.coupling_binds) {
        eprintln!(
            "note: stage {} maximum sits on the R*/gamma coupling boundary (epsilon {})",
            st.stage, st.epsilon
        );
    }
    Ok(match format {
        Format::Json => {
            let mut v = to_value(&s);
            v["schema"] = json!(SCHEMA);
            Output::Json(v)
        }
        Format::Csv => {
            let mut out = String::from("r_star,gamma,f_value,epsilon\n");
            for t in &s.triples {
                let _ = writeln!(out, "{},{},{},{}", t.r_star, t.gamma, t.f_value, t.epsilon);
            }
            Output::Csv(out)
        }
    })
}

fn oracle(a: &OracleArgs, format: Format) -> hc_core::Result<Output> {
    let g = load(&a.graph)?;
    let (kind, name) = match a.objective {
        Objective::Rev => (ObjectiveKind::Rev, "rev"),
        Objective::Cost => (ObjectiveKind::Cost, "cost"),
        Objective::CostH => (ObjectiveKind::CostH, "cost_h"),
    };
    let (value, tree) = optimum(&g, kind)?;
    let text = tree_to_text(&tree);
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "objective": name,
            "optimum": value,
            "tree": text,
        })),
        Format::Csv => Output::Csv(format!(
            "objective,optimum,tree\n{name},{value},\"{text}\"\n"
        )),
    })
}

fn maxcut(a: &MaxcutArgs, seed: u64, format: Format) -> hc_core::Result<Output> {
    let g = load(&a.graph)?;
    let oracle = a.solver.oracle(g.n(), seed);
    let all: Vec<usize> = (0..g.n()).collect();
    let cut = oracle.cut(&g, &all)?;
    let mut assignment = vec![0u8; g.n()];
    for &v in &cut.right {
        assignment[v] = 1;
    }
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "oracle": oracle,
            "declared_ratio": oracle.declared_ratio(),
            "weight": cut.weight,
            "left": cut.left,
            "right": cut.right,
            "assignment": assignment,
        })),
        Format::Csv => {
            let mut s = String::from("vertex,side\n");
            for (v, side) in assignment.iter().enumerate() {
                let _ = writeln!(s, "{v},{side}");
            }
            Output::Csv(s)
        }
    })
}

fn bench(a: &BenchArgs, seed: u64, format: Format) -> hc_core::Result<Output> {
    let mut cfg = BenchConfig {
        seed,
        timing: a.timing,
        ..BenchConfig::default()
    };
    let report: RunReport = match &a.which {
        BenchKind::Avglink { n_list } => cfg.avglink_blowup(n_list)?,
        BenchKind::Clique { n, eps, trials } => {
            cfg.trials = *trials;
            cfg.clique_separation(*n, *eps)?
        }
    };
    Ok(match format {
        Format::Json => Output::Json(to_value(&report)),
        Format::Csv => Output::Csv(report.to_csv()),
    })
}
