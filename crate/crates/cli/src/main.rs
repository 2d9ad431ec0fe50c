use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use signrank::harness::{self, Caps, Check, Command, HarnessConfig};
use signrank::signs::SignMethod;
use signrank::Graph;

#[derive(Parser)]
#[command(
    name = "signrank",
    version,
    about = "Signed and weighted adjacency rank toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full record for each graph: t, perrank, sign and weight outcomes.
    Analyze(Common),
    /// Check one theorem over a corpus.
    Verify {
        /// One of t21, c22, t31, r11, r32, flows.
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum rank over all signings.
    Minrank(Common),
    /// List the {1,2}-factors.
    Factors(Common),
    /// Size of the largest vertex set spanned by a {1,2}-factor.
    Perrank(Common),
    /// Search for a nonsingular signing.
    Signfind(Common),
    /// Search for a singular nowhere-zero integer weighting.
    Weightfind(Common),
    /// Search for a zero-sum flow.
    Zsf(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Randomized,
    Exhaustive,
    Greedy,
}

#[derive(Args)]
struct Common {
    /// Input files; standard input when none are given.
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Values range over ±1..±bound (exhaustive weights, zsf).
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long, value_enum, default_value = "randomized")]
    method: Method,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Comma-separated overrides, e.g. `sign=16,factor=10,poly=8,minrank=18,weights=1000000`.
    #[arg(long)]
    caps: Option<String>,
    /// Add wall-clock timings to records (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_caps(text: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("cap {item:?} is not key=value"))?;
        let bad = |_| format!("cap {key} needs a non-negative integer, got {value:?}");
        match key.trim() {
            "sign" => caps.sign_free_edges = value.parse().map_err(bad)?,
            "minrank" => caps.minrank_edges = value.parse().map_err(bad)?,
            "factor" => caps.factor_n = value.parse().map_err(bad)?,
            "poly" => caps.poly_n = value.parse().map_err(bad)?,
            "weights" => caps.exhaustive_weights = value.parse().map_err(bad)?,
            other => return Err(format!("unknown cap {other:?}")),
        }
    }
    Ok(caps)
}

fn read_graphs(common: &Common) -> Result<Vec<Graph>, String> {
    let read =
        |path: &PathBuf| fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()));
    let with_name = |name: &str, e: signrank::Error| format!("{name}: {e}");
    let mut texts = Vec::new();
    if common.inputs.is_empty() {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        texts.push(("<stdin>".to_string(), s));
    } else {
        for p in &common.inputs {
            texts.push((p.display().to_string(), read(p)?));
        }
    }
    let mut graphs = Vec::new();
    for (name, text) in texts {
        match common.format {
            Format::Graph6 => {
                graphs.extend(harness::read_graph6_corpus(&text).map_err(|e| with_name(&name, e))?)
            }
            Format::Edgelist => {
                graphs.push(harness::read_edge_list_file(&text).map_err(|e| with_name(&name, e))?)
            }
        }
    }
    Ok(graphs)
}

fn run(cmd: Command, common: &Common) -> Result<i32, String> {
    let caps = match &common.caps {
        Some(s) => parse_caps(s)?,
        None => Caps::default(),
    };
    if common.bound.is_some_and(|b| b < 1) {
        return Err("--bound must be at least 1".into());
    }
    let cfg = HarnessConfig {
        seed: common.seed,
        bound: common.bound,
        method: match common.method {
            Method::Randomized => SignMethod::Randomized,
            Method::Exhaustive => SignMethod::Exhaustive,
            Method::Greedy => SignMethod::Greedy,
        },
        caps,
        jobs: common.jobs,
        timings: common.timings,
    };
    let graphs = read_graphs(common)?;
    let report = harness::run(cmd, &graphs, &cfg);
    let text = report.render();
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}"))?,
    }
    Ok(report.summary.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Analyze(c) => run(Command::Analyze, c),
        Cmd::Verify { theorem, common } => theorem
            .parse::<Check>()
            .map_err(|e| e.to_string())
            .and_then(|check| run(Command::Verify(check), common)),
        Cmd::Minrank(c) => run(Command::Minrank, c),
        Cmd::Factors(c) => run(Command::Factors, c),
        Cmd::Perrank(c) => run(Command::Perrank, c),
        Cmd::Signfind(c) => run(Command::Signfind, c),
        Cmd::Weightfind(c) => run(Command::Weightfind, c),
        Cmd::Zsf(c) => run(Command::Zsf, c),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("signrank: {msg}");
            ExitCode::from(2)
        }
    }
}
