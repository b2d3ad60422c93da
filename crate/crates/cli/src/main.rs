use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cpbp::bench::{run_bench, BenchConfig, DEFAULT_W_MAX};
use cpbp::bp::{build_bare_factor_graph, run_factor_graph, TraceRow};
use cpbp::cutting_plane::{cp_bp, cp_lp, default_max_rounds, CPOutcome};
use cpbp::lp::{build_clp, build_clp_prime};
use cpbp::oracle::brute_force_mwm;
use cpbp::{
    build_transform, generate_instance, parse_cycles, parse_graph, validate_matching, Matching,
    OddCycleSet, TernaryAssignment, WeightedGraph,
};

#[derive(Parser)]
#[command(name = "cpbp", version, about = "Belief propagation and cutting planes for maximum weight matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    CpBp,
    CpLp,
    BpBare,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance: K_n with each edge removed with probability p.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_W_MAX)]
        w_max: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one instance and print a JSON result.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "cp-bp")]
        mode: Mode,
        /// BP rounds per run.
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        /// Cutting-plane round cap (default |E|).
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Cycle-set file for bp-bare (one cycle per line).
        #[arg(long)]
        cycles: Option<PathBuf>,
        /// Print the per-round BP trace to stderr (bp-bare).
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the contracted model as an instance file plus a provenance file.
    Transform {
        instance: PathBuf,
        #[arg(long)]
        cycles: Option<PathBuf>,
        /// Output prefix; writes <prefix>.txt and <prefix>.prov.
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump the relaxation in LP text format.
    Lp {
        instance: PathBuf,
        #[arg(long)]
        cycles: Option<PathBuf>,
        /// Dump the relaxation of the contracted model instead.
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the random-instance benchmark.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "50")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9")]
        p: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_W_MAX)]
        w_max: i64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Output prefix; writes <prefix>.json, <prefix>_summary.csv and
        /// <prefix>_rows.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_cycles(graph: &WeightedGraph, path: Option<&Path>) -> Result<OddCycleSet> {
    let Some(path) = path else {
        return Ok(OddCycleSet::new());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_cycles(graph, &text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn matching_json(graph: &WeightedGraph, m: &Matching) -> Value {
    let edges: Vec<Value> = m
        .edge_ids
        .iter()
        .map(|&e| {
            let edge = graph.edge(e);
            json!({ "id": e, "u": edge.u, "v": edge.v, "w": edge.w })
        })
        .collect();
    Value::Array(edges)
}

fn outcome_json(graph: &WeightedGraph, mode: &str, out: &CPOutcome) -> Value {
    json!({
        "mode": mode,
        "status": out.status,
        "matching": out.matching.as_ref().map(|m| matching_json(graph, m)),
        "weight": out.weight,
        "rounds": out.rounds(),
        "cycles_added": out.cycles.len(),
        "cycles": out.cycles.cycles().iter().map(|c| c.vertices().to_vec()).collect::<Vec<_>>(),
        "log": out.log,
    })
}

fn trace_text(rows: &[TraceRow]) -> String {
    rows.iter()
        .map(|r| format!("{} {} {}\n", r.round, r.half_decisions, r.repeated))
        .collect()
}

/// Returns the JSON result and whether the run produced a matching.
fn solve(
    graph: &WeightedGraph,
    mode: Mode,
    iterations: usize,
    max_rounds: Option<usize>,
    cycles: Option<&Path>,
    trace: bool,
) -> Result<(Value, bool)> {
    if mode != Mode::Exact && iterations < 2 {
        bail!("--iterations must be at least 2");
    }
    let rounds = max_rounds.unwrap_or_else(|| default_max_rounds(graph));
    if rounds == 0 {
        bail!("--max-rounds must be positive");
    }
    Ok(match mode {
        Mode::CpBp => {
            let out = cp_bp(graph, iterations, rounds);
            (outcome_json(graph, "cp-bp", &out), out.is_matching())
        }
        Mode::CpLp => {
            let out = cp_lp(graph, rounds);
            (outcome_json(graph, "cp-lp", &out), out.is_matching())
        }
        Mode::BpBare => {
            let cycles = read_cycles(graph, cycles)?;
            let fg = build_bare_factor_graph(graph, &cycles);
            let out = run_factor_graph(&fg, iterations, trace);
            if trace {
                eprint!("{}", trace_text(&out.trace));
            }
            let x = TernaryAssignment { values: out.y.values.clone() };
            let matching = x
                .to_matching()
                .filter(|m| out.converged && validate_matching(graph, m).ok);
            let status = match (&matching, out.converged) {
                (Some(_), _) => "MATCHING",
                (None, true) => "NOT_A_MATCHING",
                (None, false) => "UNCONVERGED",
            };
            let weight = matching
                .as_ref()
                .map(|m| validate_matching(graph, m).total_weight);
            let v = json!({
                "mode": "bp-bare",
                "status": status,
                "converged": out.converged,
                "period": out.period,
                "matching": matching.as_ref().map(|m| matching_json(graph, m)),
                "weight": weight,
                "rounds": out.rounds_used,
                "cycles_added": 0,
                "decisions": out.y.values.iter().map(|t| t.to_string()).collect::<String>(),
            });
            (v, matching.is_some())
        }
        Mode::Exact => {
            let r = brute_force_mwm(graph)?;
            let m = r.matching();
            let v = json!({
                "mode": "exact",
                "status": "MATCHING",
                "matching": matching_json(graph, &m),
                "weight": r.objective,
                "unique": r.is_unique,
                "runner_up": r.runner_up,
                "rounds": 0,
                "cycles_added": 0,
            });
            (v, true)
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { n, p, w_max, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("p must lie in [0, 1], got {p}");
            }
            if w_max < 1 {
                bail!("w-max must be at least 1");
            }
            emit(out.as_deref(), &generate_instance(n, p, w_max, seed).to_text())?;
        }
        Command::Solve { instance, mode, iterations, max_rounds, cycles, trace, out } => {
            let graph = read_graph(&instance)?;
            let (v, matched) = solve(&graph, mode, iterations, max_rounds, cycles.as_deref(), trace)?;
            emit(out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
            if !matched {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Transform { instance, cycles, out } => {
            let graph = read_graph(&instance)?;
            let cycles = read_cycles(&graph, cycles.as_deref())?;
            let model = build_transform(&graph, &cycles)?;
            fs::write(out.with_extension("txt"), model.to_text())?;
            fs::write(out.with_extension("prov"), model.provenance_text())?;
        }
        Command::Lp { instance, cycles, prime, out } => {
            let graph = read_graph(&instance)?;
            let cycles = read_cycles(&graph, cycles.as_deref())?;
            let lp = if prime {
                build_clp_prime(&build_transform(&graph, &cycles)?)
            } else {
                build_clp(&graph, &cycles)
            };
            emit(out.as_deref(), &lp.to_lp_format())?;
        }
        Command::Bench { n, p, count, seed, iterations, max_rounds, w_max, workers, out } => {
            if n.iter().any(|&n| n == 0) || count == 0 || iterations < 2 || w_max < 1 {
                bail!("n, count and w-max must be positive and iterations at least 2");
            }
            if let Some(&bad) = p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                bail!("p must lie in [0, 1], got {bad}");
            }
            let configs: Vec<BenchConfig> = n
                .iter()
                .flat_map(|&n| p.iter().map(move |&p| (n, p)))
                .map(|(n, p)| BenchConfig {
                    iterations,
                    w_max,
                    max_rounds,
                    ..BenchConfig::new(n, p, count, seed)
                })
                .collect();
            let report = run_bench(&configs, workers);
            if let Some(prefix) = out {
                let with = |suffix: &str| {
                    let mut s = prefix.clone().into_os_string();
                    s.push(suffix);
                    PathBuf::from(s)
                };
                fs::write(with(".json"), report.to_json())?;
                fs::write(with("_summary.csv"), report.summary_csv())?;
                fs::write(with("_rows.csv"), report.rows_csv())?;
            }
            print!("{}", report.summary_csv());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
