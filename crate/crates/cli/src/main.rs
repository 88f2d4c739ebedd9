//! `cutlab`: local Max-Cut tools.
//!
//! Files use 1-based node ids; JSON reports carry `"schema": "cutlab/1"`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cutlab_core::circuit2cut::{compile_cvp, compile_looker};
use cutlab_core::comparing::{self, BiaserAttestation};
use cutlab_core::flip::{default_step_limit, enumerate_local_optima_capped, run_flip, trace_cuts, PivotRule, ENUM_CAP};
use cutlab_core::graph::{cut_weight, unhappy_nodes, Graph, Partition};
use cutlab_core::io::{self, EmitOptions};
use cutlab_core::smoothed::{self, mix, Claim17Params, CubicConfig, ExperimentConfig};

#[derive(Parser)]
#[command(name = "cutlab", version, about = "Local Max-Cut search, reductions and experiments")]
#[command(after_help = "Node ids in graph, partition and JSON files are 1-based.")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cvp,
    Looker,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a circuit into a Max-Cut graph.
    Compile {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, value_enum, default_value = "cvp")]
        mode: Mode,
        /// Input bits for cvp mode, e.g. 0110 (x1 first).
        #[arg(long)]
        input: Option<String>,
        /// Graph output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Role map output; printed to stdout when --out is given and this is absent.
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Write power-of-two weights as exponent lines.
        #[arg(long)]
        exponents: bool,
    },
    /// Run FLIP local search and print the trace.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        /// `random`, `zeros`, or a partition file.
        #[arg(long, default_value = "random")]
        start: String,
        #[arg(long, default_value = "first")]
        rule: PivotRule,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether a partition is a local optimum.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// List all local optima with node 1 white.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = ENUM_CAP)]
        cap: usize,
    },
    /// Replace a comparing node by its degree-five gadget.
    Degrade {
        #[arg(long)]
        graph: PathBuf,
        /// The comparing node.
        #[arg(long)]
        node: usize,
        /// Expected biaser node.
        #[arg(long)]
        biaser: Option<usize>,
        /// Vouch that the biaser belongs to a looker of other nodes.
        #[arg(long)]
        attest: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustively check the degradation gadget on the canonical star.
    VerifyTheorem1 {
        #[arg(long)]
        m: usize,
    },
    /// Smoothed FLIP experiment on random graphs of logarithmic degree.
    Smooth {
        #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2.0)]
        degree_factor: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1")]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "random")]
        rules: Vec<PivotRule>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        tau: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Leave per-trial rows out of the report.
        #[arg(long)]
        summary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo check of the Gaussian anti-concentration bound.
    Claim17 {
        #[arg(long)]
        k: usize,
        /// 1-based indices; defaults to 1..=k.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.5)]
        delta_prime: f64,
        #[arg(long, default_value_t = 0.1)]
        sigma: f64,
        #[arg(long, default_value_t = 10.0)]
        c: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Step counts of FLIP on random cubic graphs.
    CubicBench {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        starts: usize,
        #[arg(long, default_value = "random")]
        rule: PivotRule,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    io::parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => bail!("input bits must be 0 or 1, found {c:?}"),
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Compile { circuit, mode, input, out, roles, exponents } => {
            let c = io::parse_circuit(&read(&circuit)?).with_context(|| format!("parsing {}", circuit.display()))?;
            let cg = match mode {
                Mode::Cvp => {
                    let bits = parse_bits(input.as_deref().context("cvp mode needs --input")?)?;
                    compile_cvp(&c, &bits)?
                }
                Mode::Looker => {
                    if input.is_some() {
                        bail!("looker mode takes no --input");
                    }
                    compile_looker(&c)?
                }
            };
            write(out.as_deref(), &io::emit_graph_with(&cg.graph, EmitOptions { exponents }))?;
            let map = json_text(&io::role_map(&cg));
            match (roles, out.is_some()) {
                (Some(r), _) => write(Some(&r), &map)?,
                (None, true) => write(None, &map)?,
                (None, false) => {}
            }
            Ok(true)
        }
        Cmd::Flip { graph, start, rule, seed, limit, out } => {
            let g = read_graph(&graph)?;
            let n = g.node_count();
            let p0 = match start.as_str() {
                "zeros" => Partition::new(n),
                "random" => Partition::from_bits((0..n as u64).map(|v| mix(seed ^ mix(v)) & 1 == 1).collect()),
                file => io::parse_partition(&read(Path::new(file))?, Some(n))?,
            };
            let limit = limit.unwrap_or_else(|| default_step_limit(&g));
            let t = run_flip(&g, &p0, rule, limit, seed)?;
            let cuts = trace_cuts(&g, &t)?;
            let v = io::report(&json!({
                "seed": seed,
                "rule": rule,
                "initial": t.initial,
                "final": t.final_partition,
                "step_count": t.step_count,
                "reached_limit": t.reached_limit,
                "initial_cut": cuts[0].to_string(),
                "final_cut": cuts.last().unwrap().to_string(),
                "steps": t.steps.iter().map(|(v, g)| json!({"node": v + 1, "gain": g.to_string()})).collect::<Vec<_>>(),
            }));
            write(out.as_deref(), &json_text(&v))?;
            Ok(true)
        }
        Cmd::Check { graph, partition } => {
            let g = read_graph(&graph)?;
            let p = io::parse_partition(&read(&partition)?, Some(g.node_count()))?;
            let unhappy = unhappy_nodes(&g, &p)?;
            let v = io::report(&json!({
                "local_optimum": unhappy.is_empty(),
                "unhappy": unhappy.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "cut": cut_weight(&g, &p)?.to_string(),
            }));
            write(None, &json_text(&v))?;
            Ok(true)
        }
        Cmd::Enumerate { graph, cap } => {
            let g = read_graph(&graph)?;
            let opt = enumerate_local_optima_capped(&g, cap)?;
            let v = io::report(&json!({"count": opt.len(), "optima": opt}));
            write(None, &json_text(&v))?;
            Ok(true)
        }
        Cmd::Degrade { graph, node, biaser, attest, out, report } => {
            let g = read_graph(&graph)?;
            if node == 0 || node > g.node_count() {
                bail!("node {node} outside 1..={}", g.node_count());
            }
            let att = BiaserAttestation { node: biaser.map(|b| b.saturating_sub(1)), attested: attest };
            let spec = comparing::comparing_spec(&g, node - 1, att)?;
            let dg = comparing::degrade(&g, &spec)?;
            write(out.as_deref(), &io::emit_graph(&dg.graph))?;
            let v = io::report(&json!({
                "node": node,
                "m": spec.m(),
                "biaser": spec.biaser + 1,
                "biaser_attested": spec.biaser_attested,
                "delta": spec.delta.to_string(),
                "pairs": spec.pairs.iter().map(|p| json!([p.first + 1, p.second + 1, p.weight.to_string()])).collect::<Vec<_>>(),
                "scale": dg.scale.to_string(),
                "host_map": dg.host_map.iter().map(|x| x.map(|x| x + 1)).collect::<Vec<_>>(),
                "internal": dg.internal.iter().map(|(x, id)| json!({"node": x.to_string(), "id": id + 1})).collect::<Vec<_>>(),
            }));
            match (report, out.is_some()) {
                (Some(r), _) => write(Some(&r), &json_text(&v))?,
                (None, true) => write(None, &json_text(&v))?,
                (None, false) => {}
            }
            Ok(true)
        }
        Cmd::VerifyTheorem1 { m } => {
            let r = comparing::verify_theorem1(m)?;
            let mut v = io::report(&r);
            v["verdict"] = Value::from(if r.passed { "PASS" } else { "FAIL" });
            write(None, &json_text(&v))?;
            Ok(r.passed)
        }
        Cmd::Smooth { sizes, degree_factor, sigmas, trials, rules, seed, tau, delta, summary, out } => {
            let cfg = ExperimentConfig { sizes, degree_factor, sigmas, trials, rules, seed, tau, delta, ..Default::default() };
            let mut r = smoothed::experiment(&cfg)?;
            if summary {
                r.trials.clear();
            }
            let mut v = io::report(&r);
            v["seed"] = Value::from(seed);
            write(out.as_deref(), &json_text(&v))?;
            Ok(true)
        }
        Cmd::Claim17 { k, subset, a, delta_prime, sigma, c, trials, seed } => {
            let subset = subset.unwrap_or_else(|| (1..=k).collect());
            let r = smoothed::claim17_check(&Claim17Params { k, subset, a, delta_prime, sigma, c, trials, seed })?;
            let mut v = io::report(&r);
            v["seed"] = Value::from(seed);
            write(None, &json_text(&v))?;
            Ok(r.pass)
        }
        Cmd::CubicBench { sizes, starts, rule, seed } => {
            let r = smoothed::cubic_bench(&CubicConfig { sizes, starts, rule, seed, ..Default::default() })?;
            let mut v = io::report(&r);
            v["seed"] = Value::from(seed);
            write(None, &json_text(&v))?;
            Ok(r.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
