//! Batch frontend for balanced butterfly counting.
//!
//! Subcommands: `count`, `vertex`, `estimate`, `bench`, `topk`, `pair`, and
//! `convert`. Exit codes: 0 success, 2 usage or input parse failure, 3 size
//! guard, 4 unknown vertex, 5 cross-algorithm count disagreement.

mod input;

use std::fmt;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use butterfly_core::analytics::{pair_collaboration, top_k, AnalyticsError, RankMetric};
use butterfly_core::approx::{estimate_balanced, ApproxError};
use butterfly_core::count::{
    bb_base, bb_bucket, brute_force_count, brute_force_count_unbounded, per_vertex_counts, vbbfc,
    CountError, CountReport,
};
use butterfly_core::graph::{GraphError, SignedBipartiteGraph};
use butterfly_core::ingest::{ParseError, WriteError};
use butterfly_core::par::{par_bb_bucket, ParallelConfig};

use input::{load, load_id_map, FormatArg, InputArgs};

const THREADS_ENV: &str = "BUTTERFLY_THREADS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    UnknownVertex(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::UnknownVertex(_) => 4,
            CliError::Mismatch(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Guard(m)
            | CliError::UnknownVertex(m)
            | CliError::Mismatch(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::UnknownVertex(_) => CliError::UnknownVertex(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Graph(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Graph(g) => g.into(),
            CountError::TooLarge { .. } | CountError::Overflow => CliError::Guard(e.to_string()),
        }
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::Count(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Graph(g) => g.into(),
            AnalyticsError::Count(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WriteError> for CliError {
    fn from(e: WriteError) -> Self {
        match e {
            WriteError::Parse(p) => p.into(),
            WriteError::Io(io) => CliError::Usage(io.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "butterfly",
    version,
    about = "Balanced butterfly counting for signed bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count balanced butterflies with one algorithm.
    Count(CountArgs),
    /// Balanced butterflies containing one vertex, or all vertices.
    Vertex(VertexArgs),
    /// Sparsification estimate of the balanced count.
    Estimate(EstimateArgs),
    /// Time algorithms against each other and emit CSV.
    Bench(BenchArgs),
    /// Rank vertices by positive-edge metrics.
    Topk(TopkArgs),
    /// All-positive butterflies shared by two same-side vertices.
    Pair(PairArgs),
    /// Assign signs to an edge list and write signed TSV.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Brute,
    Base,
    Bucket,
    Parallel,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Brute => "brute",
            AlgoArg::Base => "base",
            AlgoArg::Bucket => "bucket",
            AlgoArg::Parallel => "parallel",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// Worker count for --algo parallel; BUTTERFLY_THREADS applies when absent.
    #[arg(long)]
    threads: Option<NonZeroUsize>,
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Bypass the brute-force size guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VertexArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Global vertex id to count for.
    #[arg(long, conflicts_with = "all")]
    vertex: Option<u32>,
    /// Emit a TSV of every vertex and its count.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, conflicts_with = "synthetic")]
    input: Option<PathBuf>,
    #[arg(long)]
    synthetic: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::SignedTsv)]
    format: FormatArg,
    #[arg(long)]
    sign_prob: Option<f64>,
    /// Seed for random sign assignment on unsigned input.
    #[arg(long, default_value_t = 0)]
    sign_seed: u64,
    /// Edge retention probability, in (0, 1].
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    trials: usize,
    /// Seed for the sampling trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated algorithms to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "base,bucket")]
    algos: Vec<AlgoArg>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Comma-separated worker counts for the parallel algorithm.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    threads_list: Vec<NonZeroUsize>,
    /// Bypass the brute-force size guard.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    PosButterfly,
    PosDegree,
}

#[derive(Args)]
struct TopkArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(short, long)]
    k: usize,
    /// Optional id-map file for human-readable labels.
    #[arg(long)]
    id_map: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Global id of the first vertex.
    #[arg(long)]
    a: u32,
    /// Global id of the second vertex.
    #[arg(long)]
    b: u32,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::UnsignedTsv)]
    format: FormatArg,
    /// Random signing: probability of a positive sign.
    #[arg(long, conflicts_with = "threshold")]
    sign_prob: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Threshold signing: weight >= X becomes positive.
    #[arg(long)]
    threshold: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the dense-id to original-id mapping.
    #[arg(long)]
    id_map_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`butterfly bench | head`) instead of
    // panicking in println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Count(args) => cmd_count(args),
        Command::Vertex(args) => cmd_vertex(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Topk(args) => cmd_topk(args),
        Command::Pair(args) => cmd_pair(args),
        Command::Convert(args) => cmd_convert(args),
    }
}

fn resolve_threads(flag: Option<NonZeroUsize>) -> NonZeroUsize {
    if let Some(t) = flag {
        return t;
    }
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        match raw.parse() {
            Ok(t) => return t,
            Err(_) => eprintln!("warning: ignoring invalid {THREADS_ENV}={raw:?}"),
        }
    }
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

fn run_algo(
    graph: &SignedBipartiteGraph,
    algo: AlgoArg,
    workers: NonZeroUsize,
    force: bool,
) -> Result<CountReport, CliError> {
    Ok(match algo {
        AlgoArg::Brute if force => brute_force_count_unbounded(graph)?,
        AlgoArg::Brute => brute_force_count(graph)?,
        AlgoArg::Base => bb_base(graph)?,
        AlgoArg::Bucket => bb_bucket(graph)?,
        AlgoArg::Parallel => par_bb_bucket(graph, &ParallelConfig::with_workers(workers))?,
    })
}

fn millis(d: Duration) -> f64 {
    d.as_micros() as f64 / 1_000.0
}

/// JSON integers top out at u64; larger counts degrade to strings.
fn count_value(v: u128) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn cmd_count(args: CountArgs) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let workers = match args.algo {
        AlgoArg::Parallel => resolve_threads(args.threads),
        _ => NonZeroUsize::MIN,
    };
    let report = run_algo(&loaded.graph, args.algo, workers, args.force)?;
    match args.output {
        OutputArg::Text => {
            println!(
                "algo={} balanced={} unbalanced={} total={} wall_time_ms={:.3} workers={}",
                args.algo.name(),
                report.balanced,
                report.unbalanced,
                report.total,
                millis(report.wall_time),
                workers
            );
        }
        OutputArg::Json => {
            let value = json!({
                "algo": args.algo.name(),
                "balanced": count_value(report.balanced),
                "unbalanced": count_value(report.unbalanced),
                "total": count_value(report.total),
                "wall_time_ms": millis(report.wall_time),
                "workers": workers.get(),
                "wedges_processed": report.wedges_processed,
                "pair_checks": count_value(report.pair_checks),
            });
            println!("{value}");
        }
    }
    Ok(())
}

fn cmd_vertex(args: VertexArgs) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let graph = &loaded.graph;
    match (args.vertex, args.all) {
        (Some(gid), false) => {
            if gid as usize >= graph.vertex_count() {
                return Err(CliError::UnknownVertex(format!(
                    "vertex {gid} out of range (graph has {} vertices)",
                    graph.vertex_count()
                )));
            }
            let count = vbbfc(graph, graph.vertex_ref(gid))?;
            println!("{count}");
        }
        (None, true) => {
            let counts = per_vertex_counts(graph)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for (gid, count) in counts.iter().enumerate() {
                writeln!(out, "{gid}\t{count}").map_err(|e| CliError::Usage(e.to_string()))?;
            }
        }
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --vertex ID or --all".into(),
            ))
        }
    }
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let loaded = load(&InputArgs {
        input: args.input,
        synthetic: args.synthetic,
        format: args.format,
        sign_prob: args.sign_prob,
        seed: args.sign_seed,
    })?;
    let report = estimate_balanced(&loaded.graph, args.rho, args.trials, args.seed)?;
    let value = json!({
        "rho": report.rho,
        "trials": report.trials,
        "seed": report.seed,
        "mean": report.mean,
        "sample_stddev": report.sample_stddev,
        "estimates": report.estimates,
    });
    println!("{value}");
    Ok(())
}

type Counts = (u128, u128, u128);

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    if args.algos.is_empty() {
        return Err(CliError::Usage(
            "--algos must name at least one algorithm".into(),
        ));
    }
    let loaded = load(&args.input)?;
    let dataset = csv_field(&loaded.label);

    // One timing cell per algorithm; the parallel algo sweeps the thread list.
    let mut cells: Vec<(AlgoArg, NonZeroUsize)> = Vec::new();
    for &algo in &args.algos {
        match algo {
            AlgoArg::Parallel => {
                for &w in &args.threads_list {
                    cells.push((algo, w));
                }
            }
            _ => cells.push((algo, NonZeroUsize::MIN)),
        }
    }

    let mut reference: Option<Counts> = None;
    println!("algo,dataset,workers,repeat,balanced,unbalanced,total,wall_time_ms");
    let mut medians: Vec<(AlgoArg, NonZeroUsize, f64, Counts)> = Vec::new();
    for (algo, workers) in cells {
        let mut times = Vec::with_capacity(args.repeats);
        let mut counts = (0, 0, 0);
        for repeat in 0..args.repeats {
            let r = run_algo(&loaded.graph, algo, workers, args.force)?;
            counts = (r.balanced, r.unbalanced, r.total);
            match reference {
                None => reference = Some(counts),
                Some(expected) if expected != counts => {
                    return Err(CliError::Mismatch(format!(
                        "count disagreement: {} with {} workers got {:?}, expected {:?}",
                        algo.name(),
                        workers,
                        counts,
                        expected
                    )));
                }
                Some(_) => {}
            }
            println!(
                "{},{},{},{},{},{},{},{:.3}",
                algo.name(),
                dataset,
                workers,
                repeat,
                r.balanced,
                r.unbalanced,
                r.total,
                millis(r.wall_time)
            );
            times.push(millis(r.wall_time));
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
        medians.push((algo, workers, times[times.len() / 2], counts));
    }
    for (algo, workers, median, (balanced, unbalanced, total)) in medians {
        println!(
            "{},{},{},median,{},{},{},{:.3}",
            algo.name(),
            dataset,
            workers,
            balanced,
            unbalanced,
            total,
            median
        );
    }
    Ok(())
}

fn cmd_topk(args: TopkArgs) -> Result<(), CliError> {
    if args.k == 0 {
        return Err(CliError::Usage("-k must be at least 1".into()));
    }
    let loaded = load(&args.input)?;
    let metric = match args.metric {
        MetricArg::PosButterfly => RankMetric::PositiveButterflies,
        MetricArg::PosDegree => RankMetric::PositiveDegree,
    };
    let labels = match &args.id_map {
        Some(path) => Some(load_id_map(path)?),
        None => None,
    };
    let ranked = top_k(&loaded.graph, metric, args.k)?;
    for (rank, (gid, score)) in ranked.entries.iter().enumerate() {
        match labels.as_ref().and_then(|m| m.get(gid)) {
            Some(label) => println!("{}\t{gid}\t{score}\t{label}", rank + 1),
            None => println!("{}\t{gid}\t{score}", rank + 1),
        }
    }
    Ok(())
}

fn cmd_pair(args: PairArgs) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let graph = &loaded.graph;
    for gid in [args.a, args.b] {
        if gid as usize >= graph.vertex_count() {
            return Err(CliError::UnknownVertex(format!(
                "vertex {gid} out of range (graph has {} vertices)",
                graph.vertex_count()
            )));
        }
    }
    let count = pair_collaboration(graph, graph.vertex_ref(args.a), graph.vertex_ref(args.b))?;
    println!("{count}");
    Ok(())
}

fn cmd_convert(args: ConvertArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    let parsed = butterfly_core::ingest::parse_edge_list(&text, args.format.into())?;

    let signed = match (args.sign_prob, args.threshold) {
        (Some(p), None) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!(
                    "--sign-prob must be in [0, 1], got {p}"
                )));
            }
            parsed.with_random_signs(p, args.seed)
        }
        (None, Some(t)) => parsed.with_threshold_signs(t)?,
        (None, None) => parsed, // already-signed input passes through
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    match &args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            signed.write_signed_tsv(&mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            signed.write_signed_tsv(&mut stdout.lock())?;
        }
    }
    if let Some(path) = &args.id_map_out {
        let mut file = std::fs::File::create(path)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        signed
            .write_id_map(&mut file)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}
