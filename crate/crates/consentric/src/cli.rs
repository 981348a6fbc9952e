//! Command-line front end: centrality scoring, consensus runs, the
//! depth-vs-eigenvector profile and the gas scenario, each emitting a
//! reproducibility manifest.
//!
//! Exit codes: 0 success, 1 input/parse failures, 2 invalid parameters
//! or usage, 3 computation failures (disconnection, non-convergence,
//! numeric breakdown). Data goes to `--out` or standard output;
//! diagnostics and summaries go to standard error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::centrality::{
    betweenness_centrality, cd_vector_all, closeness_centrality, d2cd_vector_all, dcd_vector_all,
    degree_centrality, eigenvector_centrality, CumulativeParams, Measure, NeighborhoodMode,
    PairCounting,
};
use crate::compare::{
    convergence_profile, weights_for_scheme, ErrorNorm, ProfileOptions,
};
use crate::consensus::{
    check_average_preservation, run_consensus, run_scheduled_consensus, schedule_from_weights,
    Scheme,
};
use crate::error::{Error, Result};
use crate::gas::{run_coordination, CoordinationOptions, GasNetwork};
use crate::graph::{
    bucky, complete, cycle, erdos_renyi, load_edge_list, path, star, watts_strogatz, Graph,
};

/// Maps library errors onto the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse { .. } | Error::Json(_) | Error::Scenario(_) => 1,
        Error::InvalidParameter(_) | Error::UnknownNode { .. } => 2,
        Error::Disconnected(_)
        | Error::NoConvergence { .. }
        | Error::DimensionMismatch { .. }
        | Error::Numerical { .. } => 3,
    }
}

/// Record of one invocation, written alongside every data output so a
/// run can be reproduced from its artifacts alone.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: serde_json::Value,
    pub seed: u64,
    pub outputs: Vec<String>,
    pub tool_version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "consentric",
    version,
    about = "Graph centrality measures and the consensus algorithms they drive"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every node with a centrality measure
    Centrality(CentralityArgs),
    /// Iterate a consensus weight scheme from an initial state
    Consensus(ConsensusArgs),
    /// Profile cumulative-degree scores against eigenvector centrality
    Compare(CompareArgs),
    /// Coordinate the gas-pipeline scenario, optionally after faults
    Gas(GasArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file to analyze
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generated graph: bucky, path:N, cycle:N, complete:N, star:N, er:N:P or ws:N:K:BETA
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write data here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Data format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct CentralityArgs {
    #[command(flatten)]
    source: GraphSource,
    /// degree, betweenness, closeness, eigenvector, cd, cdn, dcd or d2cd
    #[arg(long)]
    measure: String,
    /// Layer depth for cdn and d2cd
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Neighborhood mode for the cumulative family: walk or tree
    #[arg(long)]
    mode: Option<String>,
    /// Walk over A + I instead of A (walk mode only)
    #[arg(long)]
    lazy: bool,
    /// Count the root itself at depth zero (tree mode only)
    #[arg(long)]
    include_self: bool,
    /// Comma-separated per-layer coefficients for d2cd, e.g. 0.5,0.25
    #[arg(long)]
    discounts: Option<String>,
    /// Report closeness as inverse mean distance (higher = central)
    #[arg(long)]
    inverse: bool,
    /// Power-iteration tolerance for eigenvector centrality
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Power-iteration cap for eigenvector centrality
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    /// Betweenness pair counting: unordered or ordered
    #[arg(long, default_value = "unordered")]
    pairs: String,
    /// Seed for generated graphs
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ConsensusArgs {
    #[command(flatten)]
    source: GraphSource,
    /// vicsek, metropolis, max-degree, directed or identity
    #[arg(long)]
    scheme: String,
    /// Comma-separated initial state; absent draws seeded values in [0, 1)
    #[arg(long)]
    x0: Option<String>,
    /// Disagreement threshold that counts as converged
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Iteration cap
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Run the gossip schedule derived from the weights instead of
    /// synchronous rounds
    #[arg(long)]
    schedule: bool,
    /// Period scale for --schedule: edge (i, j) fires every
    /// max(1, round(BASE / w_ij)) rounds
    #[arg(long, default_value_t = 1.0)]
    base_period: f64,
    /// Keep every k-th row of the trace CSV (first and last always kept)
    #[arg(long, default_value_t = 1)]
    thin: usize,
    /// Also write the weight matrix as `i j w` triplets, with a JSON
    /// header sidecar
    #[arg(long)]
    weights_out: Option<PathBuf>,
    /// Seed for generated graphs and random initial states
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Largest depth to profile
    #[arg(long, default_value_t = 50)]
    max_n: usize,
    /// walk or tree
    #[arg(long, default_value = "walk")]
    mode: String,
    /// Walk over A + I (true) or plain A (false)
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    lazy: bool,
    /// Error threshold(s) annotated with the first depth reaching them
    #[arg(long = "threshold", value_name = "T")]
    thresholds: Vec<f64>,
    /// linf or l2
    #[arg(long, default_value = "linf")]
    error_norm: String,
    /// Seed for generated graphs
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct GasArgs {
    /// Scenario config JSON; defaults to the bundled pipeline
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Mode change applied before the run, e.g. pipe:3-7=break,
    /// compressor:4=shut_down, valve:9=close (repeatable)
    #[arg(long = "fault")]
    faults: Vec<String>,
    /// Consumer anchor strength; overrides the scenario value
    #[arg(long)]
    beta: Option<f64>,
    /// Seed for non-consumer initial pressures; overrides the scenario
    #[arg(long)]
    seed: Option<u64>,
    /// Disagreement threshold that counts as converged
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Iteration cap
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Parses and dispatches, translating errors to the exit contract.
/// Usage errors (unknown flags, missing required arguments) exit 2 via
/// the argument parser itself.
pub fn run() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .try_init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Centrality(a) => cmd_centrality(a),
        Command::Consensus(a) => cmd_consensus(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Gas(a) => cmd_gas(a),
    }
}

/// Builds a graph from `SPEC`, which is either a family name with
/// colon-separated parameters or nothing the parser recognizes.
fn parse_gen(spec: &str, seed: u64) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || {
        Error::InvalidParameter(format!(
            "unknown generator '{spec}' (expected bucky, path:N, cycle:N, complete:N, star:N, \
             er:N:P or ws:N:K:BETA)"
        ))
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| usage());
    let real = |s: &str| s.parse::<f64>().map_err(|_| usage());
    match parts.as_slice() {
        ["bucky"] => Ok(bucky()),
        ["path", n] => Ok(path(num(n)?)),
        ["cycle", n] => {
            let n = num(n)?;
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "cycle needs at least 3 nodes, got {n}"
                )));
            }
            Ok(cycle(n))
        }
        ["complete", n] => Ok(complete(num(n)?)),
        ["star", n] => Ok(star(num(n)?)),
        ["er", n, p] => erdos_renyi(num(n)?, real(p)?, seed),
        ["ws", n, k, beta] => watts_strogatz(num(n)?, num(k)?, real(beta)?, seed),
        _ => Err(usage()),
    }
}

fn load_graph(source: &GraphSource, seed: u64) -> Result<(Graph, String)> {
    match (&source.graph, &source.gen) {
        (Some(p), None) => Ok((load_edge_list(p)?, p.display().to_string())),
        (None, Some(spec)) => Ok((parse_gen(spec, seed)?, spec.clone())),
        _ => unreachable!("clap enforces exactly one graph source"),
    }
}

/// Stable content fingerprint of a graph (FNV-1a over its canonical
/// edge-list text), recorded in manifests.
fn graph_hash(g: &Graph) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in g.to_edge_list_string().as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Collects emitted artifacts and routes them to files or the standard
/// streams.
struct Emitter {
    out: Option<PathBuf>,
    outputs: Vec<String>,
}

fn sibling(base: &Path, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}.{suffix}", base.display()))
}

impl Emitter {
    fn new(out: Option<PathBuf>) -> Emitter {
        Emitter { out, outputs: Vec::new() }
    }

    /// Primary data: the `--out` file, or standard output.
    fn data(&mut self, content: &str) -> Result<()> {
        match &self.out {
            Some(p) => {
                std::fs::write(p, content)?;
                self.outputs.push(p.display().to_string());
            }
            None => {
                print!("{content}");
                self.outputs.push("-".to_string());
            }
        }
        Ok(())
    }

    /// Companion document: `{out}.{suffix}` next to the data file, or a
    /// single diagnostic line when data went to standard output.
    fn sidecar(&mut self, suffix: &str, content: &str) -> Result<()> {
        match &self.out {
            Some(p) => {
                let path = sibling(p, suffix);
                std::fs::write(&path, content)?;
                self.outputs.push(path.display().to_string());
            }
            None => eprintln!("{}", content.trim_end().replace('\n', " ")),
        }
        Ok(())
    }

    /// Arbitrary extra file (independent of `--out`).
    fn file(&mut self, path: &Path, content: &str) -> Result<()> {
        std::fs::write(path, content)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    /// Writes the manifest last so it can list every other artifact.
    fn finish(self, command: &str, inputs: serde_json::Value, seed: u64) -> Result<()> {
        let manifest = RunManifest {
            command: command.to_string(),
            inputs,
            seed,
            outputs: self.outputs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        match &self.out {
            Some(p) => {
                let mut text =
                    serde_json::to_string_pretty(&manifest).expect("manifest serializes");
                text.push('\n');
                std::fs::write(sibling(p, "manifest.json"), text)?;
            }
            None => eprintln!(
                "manifest: {}",
                serde_json::to_string(&manifest).expect("manifest serializes")
            ),
        }
        Ok(())
    }
}

fn parse_mode(s: &str) -> Result<NeighborhoodMode> {
    match s {
        "walk" => Ok(NeighborhoodMode::Walk),
        "tree" => Ok(NeighborhoodMode::Tree),
        _ => Err(Error::InvalidParameter(format!(
            "unknown neighborhood mode '{s}' (expected walk or tree)"
        ))),
    }
}

fn parse_float_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| {
                Error::InvalidParameter(format!("'{t}' in '{s}' is not a number"))
            })
        })
        .collect()
}

fn cmd_centrality(args: CentralityArgs) -> Result<()> {
    let (g, source_name) = load_graph(&args.source, args.seed)?;
    let measure: Measure = args.measure.parse()?;

    let cumulative = |default_mode: NeighborhoodMode| -> Result<CumulativeParams> {
        let mode = match args.mode.as_deref() {
            Some(s) => parse_mode(s)?,
            None => default_mode,
        };
        let mut p = CumulativeParams {
            layer_n: args.n,
            mode,
            lazy: args.lazy,
            discounts: Vec::new(),
            include_self: args.include_self,
        };
        if let Some(d) = args.discounts.as_deref() {
            p = p.with_discounts(parse_float_list(d)?);
        }
        Ok(p)
    };

    let vector = match measure {
        Measure::Degree => degree_centrality(&g)?,
        Measure::Betweenness => {
            let pairs = match args.pairs.as_str() {
                "unordered" => PairCounting::Unordered,
                "ordered" => PairCounting::Ordered,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown pair counting '{other}' (expected unordered or ordered)"
                    )))
                }
            };
            betweenness_centrality(&g, pairs)
        }
        Measure::Closeness => closeness_centrality(&g, args.inverse),
        Measure::Eigenvector => eigenvector_centrality(&g, args.tol, args.max_iter)?,
        Measure::Cd => cd_vector_all(&g, &CumulativeParams::walk(1))?,
        Measure::Cdn => cd_vector_all(&g, &cumulative(NeighborhoodMode::Walk)?)?,
        Measure::Dcd => dcd_vector_all(&g, &cumulative(NeighborhoodMode::Tree)?)?,
        Measure::D2cd => d2cd_vector_all(&g, &cumulative(NeighborhoodMode::Walk)?)?,
    };

    let mut emit = Emitter::new(args.output.out);
    match args.output.format {
        Format::Csv => {
            emit.data(&vector.to_csv())?;
            emit.sidecar("params.json", &vector.params_json())?;
        }
        Format::Json => emit.data(&vector.to_json())?,
    }
    let inputs = json!({
        "source": source_name,
        "graph_hash": graph_hash(&g),
        "measure": vector.measure,
        "params": vector.params,
    });
    emit.finish("centrality", inputs, args.seed)
}

fn cmd_consensus(args: ConsensusArgs) -> Result<()> {
    let (g, source_name) = load_graph(&args.source, args.seed)?;
    let scheme: Scheme = args.scheme.parse()?;
    let w = weights_for_scheme(&g, scheme)?;

    let (x0, x0_desc) = match args.x0.as_deref() {
        Some(list) => {
            let x = parse_float_list(list)?;
            (x, json!(list))
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let x: Vec<f64> = (0..g.node_count()).map(|_| rng.gen::<f64>()).collect();
            (x, json!("seeded-uniform"))
        }
    };

    let trace = if args.schedule {
        let sched = schedule_from_weights(&w, args.base_period)?;
        run_scheduled_consensus(&w, &sched, &x0, args.tol, args.max_iter)?
    } else {
        run_consensus(&w, &x0, args.tol, args.max_iter)?
    };

    let mut emit = Emitter::new(args.output.out);
    match args.output.format {
        Format::Csv => emit.data(&trace.to_csv(args.thin))?,
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&trace).expect("trace serializes");
            text.push('\n');
            emit.data(&text)?;
        }
    }
    if let Some(wp) = &args.weights_out {
        emit.file(wp, &w.to_triplet_string())?;
        emit.file(&sibling(wp, "header.json"), &w.header_json())?;
    }
    eprintln!(
        "iterations={} converged={} limit={} average_preserved={}",
        trace.iterations,
        trace.converged,
        trace.limit(),
        check_average_preservation(&w)
    );

    let inputs = json!({
        "source": source_name,
        "graph_hash": graph_hash(&g),
        "scheme": scheme,
        "x0": x0_desc,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "schedule": args.schedule,
        "base_period": args.base_period,
    });
    emit.finish("consensus", inputs, args.seed)
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let (g, source_name) = load_graph(&args.source, args.seed)?;
    let opts = ProfileOptions {
        mode: parse_mode(&args.mode)?,
        lazy: args.lazy,
        thresholds: if args.thresholds.is_empty() { vec![0.01] } else { args.thresholds.clone() },
        error_norm: match args.error_norm.as_str() {
            "linf" => ErrorNorm::Linf,
            "l2" => ErrorNorm::L2,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown error norm '{other}' (expected linf or l2)"
                )))
            }
        },
    };
    let profile = convergence_profile(&g, &source_name, args.max_n, &opts)?;

    let mut emit = Emitter::new(args.output.out);
    match args.output.format {
        Format::Csv => {
            emit.data(&profile.to_csv())?;
            let mut note = serde_json::to_string_pretty(&json!({
                "graph_id": profile.graph_id,
                "mode": profile.mode,
                "lazy": profile.lazy,
                "first_n_below": profile.first_n_below,
            }))
            .expect("profile note serializes");
            note.push('\n');
            emit.sidecar("params.json", &note)?;
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&profile).expect("profile serializes");
            text.push('\n');
            emit.data(&text)?;
        }
    }
    let inputs = json!({
        "source": source_name,
        "graph_hash": graph_hash(&g),
        "max_n": args.max_n,
        "mode": opts.mode,
        "lazy": opts.lazy,
        "thresholds": opts.thresholds,
        "error_norm": opts.error_norm,
    });
    emit.finish("compare", inputs, args.seed)
}

fn cmd_gas(args: GasArgs) -> Result<()> {
    let mut net = match &args.scenario {
        Some(p) => GasNetwork::from_file(p)?,
        None => GasNetwork::bundled(),
    };
    for spec in &args.faults {
        net = net.inject_fault(&spec.parse()?)?;
    }
    let opts = CoordinationOptions {
        desired: None,
        beta: args.beta,
        seed: args.seed,
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let result = run_coordination(&net, &opts)?;

    let mut emit = Emitter::new(args.output.out);
    match args.output.format {
        Format::Csv => emit.data(&result.to_csv())?,
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&result).expect("result serializes");
            text.push('\n');
            emit.data(&text)?;
        }
    }
    eprintln!(
        "iterations={} converged={} gap_psi={}",
        result.trace.iterations, result.trace.converged, result.gap
    );

    let scenario_name: String = args
        .scenario
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "bundled".to_string());
    let inputs = json!({
        "scenario": scenario_name,
        "faults": args.faults,
        "beta": args.beta.unwrap_or(net.beta()),
        "tol": args.tol,
        "max_iter": args.max_iter,
    });
    emit.finish("gas", inputs, args.seed.unwrap_or(net.seed()))
}
