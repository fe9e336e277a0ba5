//! `rspan`: robust spanner scoring and evaluation from the command line.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use robust_spanners::evaluation::{
    border_probability_bounds, sample_vertices, set_shii, simulate_removal, DiffusionConfig, DiffusionModel,
    RemovalMode, RemovalSchedule, RobustnessPoint,
};
use robust_spanners::io::{
    read_score_csv, read_vertex_set, write_border_scores, write_matrix_csv, write_ranked, write_robustness_csv,
    write_shii_csv, ScoreFormat,
};
use robust_spanners::oracle::oracle_rsi;
use robust_spanners::{
    find_border_vertices, parse_community_file, parse_edge_list, score, select_target_communities, top_k, BuildSummary,
    CommunityAssignment, RsiScores, ScoreRun, TargetSet, TargetSpec, UndirectedGraph, VertexId,
};

const DEFAULT_TOP_COMMUNITIES: usize = 5;

#[derive(Parser)]
#[command(
    name = "rspan",
    version,
    about = "Robust spanner detection for community border vertices"
)]
struct Cli {
    /// Worker threads (default: all available)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// More detail on stderr
    #[arg(short, long, global = true, conflicts_with = "quiet")]
    verbose: bool,

    /// Only errors on stderr
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score border vertices, optionally keeping the top K
    Score(ScoreArgs),
    /// Evaluation harness
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Compare the pipeline against the direct reference implementation
    Oracle(OracleArgs),
    /// Graph and community statistics
    Info(InfoArgs),
}

#[derive(Subcommand)]
enum EvalCommand {
    /// AWCC under incremental random removal for a spanner set and a comparison set
    Robustness(RobustnessArgs),
    /// Mean structural hole influence index of a vertex set
    Shii(ShiiArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list, one `u v` pair per line
    #[arg(long)]
    graph: PathBuf,

    /// Community file, one `vertex community` pair per line
    #[arg(long)]
    communities: PathBuf,
}

#[derive(Args)]
struct TargetArgs {
    /// Use the N largest communities as targets [default: 5]
    #[arg(long, value_name = "N", conflicts_with = "targets")]
    top_communities: Option<usize>,

    /// Explicit comma-separated target community IDs
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    targets: Option<Vec<u32>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ScoreFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ScoreFormat::Csv,
            Format::Json => ScoreFormat::Json,
        }
    }
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    targets: TargetArgs,

    /// Keep only the K highest-scoring vertices
    #[arg(long, value_name = "K")]
    top_k: Option<usize>,

    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Accepted for symmetry with the other commands; scoring is deterministic
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also write the normalized interaction matrix as CSV
    #[arg(long, value_name = "FILE")]
    dump_matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Edge,
    Node,
    Both,
}

#[derive(Args)]
struct RobustnessArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    targets: TargetArgs,

    /// Score CSV to rank from instead of scoring the graph
    #[arg(long)]
    scores: Option<PathBuf>,

    /// Size of the spanner set (and of the random comparison set)
    #[arg(long, default_value_t = 25)]
    set_size: usize,

    /// Comparison vertex set file (default: random border vertices)
    #[arg(long)]
    compare: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,

    /// Removal step as a fraction of edges or vertices
    #[arg(long, default_value_t = 0.05)]
    step: f64,

    /// Largest cumulative removal fraction
    #[arg(long, default_value_t = 0.75)]
    max: f64,

    #[arg(long, default_value_t = 10)]
    trials: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output CSV (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ic,
    Lt,
}

#[derive(Args)]
struct ShiiArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    targets: TargetArgs,

    /// Seed vertex file (default: the top --set-size vertices by score)
    #[arg(long)]
    vertices: Option<PathBuf>,

    #[arg(long, default_value_t = 25)]
    set_size: usize,

    #[arg(long, value_enum, default_value = "ic")]
    model: ModelArg,

    #[arg(long, default_value_t = 0.1)]
    ic_probability: f64,

    /// Monte-Carlo runs per seed vertex
    #[arg(long, default_value_t = 1000)]
    runs: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Per-vertex CSV (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    targets: TargetArgs,

    /// Largest graph the oracle accepts without --force
    #[arg(long, default_value_t = 2000)]
    max_vertices: usize,

    #[arg(long)]
    force: bool,

    /// Maximum accepted relative deviation
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Inter-community edge probability for the border-fraction bounds
    #[arg(long)]
    p: Option<f64>,
}

enum Failure {
    Usage(String),
    Input(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Check(m) => m,
        }
    }
}

impl From<robust_spanners::Error> for Failure {
    fn from(e: robust_spanners::Error) -> Self {
        match e {
            robust_spanners::Error::InvalidParameter(m) => Failure::Usage(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

struct Log {
    verbose: bool,
    quiet: bool,
}

impl Log {
    fn info(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn detail(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn warn(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("warning: {}", msg.as_ref());
        }
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: robust_spanners::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn write_failed(e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("writing output: {e}"))
}

struct Loaded {
    graph: UndirectedGraph,
    communities: CommunityAssignment,
}

fn load(input: &InputArgs, log: &Log) -> CliResult<Loaded> {
    let (graph, summary): (UndirectedGraph, BuildSummary) =
        in_file(&input.graph, parse_edge_list(open(&input.graph)?))?;
    if summary.self_loops + summary.duplicate_edges > 0 {
        log.warn(format!(
            "dropped {} self-loops and {} duplicate edges",
            summary.self_loops, summary.duplicate_edges
        ));
    }
    let communities = in_file(
        &input.communities,
        parse_community_file(open(&input.communities)?, &graph),
    )?;
    log.detail(format!(
        "loaded |V|={} |E|={} communities={}",
        graph.vertex_count(),
        graph.edge_count(),
        communities.community_count()
    ));
    Ok(Loaded { graph, communities })
}

fn targets(args: &TargetArgs, communities: &CommunityAssignment, log: &Log) -> CliResult<TargetSet> {
    let spec = match (&args.targets, args.top_communities) {
        (Some(ids), _) => TargetSpec::Explicit(ids.clone()),
        (None, Some(n)) => TargetSpec::TopBySize(n),
        (None, None) => {
            let available = communities.community_count();
            if available < DEFAULT_TOP_COMMUNITIES {
                log.warn(format!("only {available} communities, using all as targets"));
            }
            TargetSpec::TopBySize(DEFAULT_TOP_COMMUNITIES.min(available))
        }
    };
    let set = select_target_communities(communities, &spec)?;
    log.detail(format!("target communities: {:?}", set.targets()));
    Ok(set)
}

fn ms(d: Duration) -> String {
    format!("{:.2}ms", d.as_secs_f64() * 1e3)
}

fn report_run(run: &ScoreRun, log: &Log) {
    let t = &run.timings;
    log.info(format!(
        "border={} ; counts={} weights={} normalize={} subgraph={} scores={} ; total={}",
        ms(t.border),
        ms(t.counts),
        ms(t.weights),
        ms(t.normalize),
        ms(t.subgraph),
        ms(t.scores),
        ms(t.total())
    ));
    log.info(format!(
        "|V_b|={} |E_b|={} omega_max={} triad_terms={} (closed={} open={})",
        run.border.len(),
        run.predecessors.entry_count() / 2,
        run.omega_max(),
        run.triads.total(),
        run.triads.closed,
        run.triads.open
    ));
}

fn cmd_score(args: &ScoreArgs, log: &Log) -> CliResult {
    let data = load(&args.input, log)?;
    let t = targets(&args.targets, &data.communities, log)?;
    let run = score(&data.graph, &data.communities, &t);
    report_run(&run, log);
    if run.border.is_empty() {
        log.warn("no border vertices; every score is zero");
    }

    let mut out = output(args.out.as_deref())?;
    match args.top_k {
        Some(k) => {
            let ranked = top_k(&run.scores, k.min(run.border.len()));
            write_ranked(&mut out, args.format.into(), &ranked)?
        }
        None => write_border_scores(&mut out, args.format.into(), &run.scores, &run.border)?,
    }
    out.flush().map_err(write_failed)?;

    if let Some(path) = &args.dump_matrix {
        let mut m = output(Some(path))?;
        write_matrix_csv(&mut m, &run.matrix, &run.border, &t)?;
        m.flush().map_err(write_failed)?;
    }
    Ok(())
}

/// Scores for ranking: read from a score file, or computed.
fn ranking_scores(
    data: &Loaded,
    target_args: &TargetArgs,
    scores_file: Option<&Path>,
    log: &Log,
) -> CliResult<(RsiScores, Vec<VertexId>)> {
    let border = find_border_vertices(&data.graph, &data.communities);
    let scores = match scores_file {
        Some(path) => {
            let mut values = vec![0.0; data.graph.vertex_count()];
            for (v, s) in in_file(path, read_score_csv(open(path)?))? {
                let slot = values
                    .get_mut(v as usize)
                    .ok_or_else(|| Failure::Input(format!("{}: vertex {v} is not in the graph", path.display())))?;
                *slot = s;
            }
            RsiScores::new(values)
        }
        None => {
            let t = targets(target_args, &data.communities, log)?;
            let run = score(&data.graph, &data.communities, &t);
            report_run(&run, log);
            run.scores
        }
    };
    Ok((scores, border.vertices().to_vec()))
}

fn read_set(path: &Path, graph: &UndirectedGraph) -> CliResult<Vec<VertexId>> {
    let set = in_file(path, read_vertex_set(open(path)?))?;
    if let Some(&v) = set.iter().find(|&&v| v as usize >= graph.vertex_count()) {
        return Err(Failure::Input(format!(
            "{}: vertex {v} is not in the graph",
            path.display()
        )));
    }
    if set.is_empty() {
        return Err(Failure::Input(format!("{}: empty vertex set", path.display())));
    }
    Ok(set)
}

fn cmd_robustness(args: &RobustnessArgs, log: &Log) -> CliResult {
    let data = load(&args.input, log)?;
    let (scores, border) = ranking_scores(&data, &args.targets, args.scores.as_deref(), log)?;
    if border.is_empty() {
        return Err(Failure::Input("no border vertices to select from".into()));
    }
    let spanners = top_k(&scores, args.set_size.min(border.len())).vertices();
    let comparison = match &args.compare {
        Some(path) => read_set(path, &data.graph)?,
        None => sample_vertices(&border, args.set_size, args.seed),
    };
    log.detail(format!("spanner set {spanners:?}"));
    log.detail(format!("comparison set {comparison:?}"));

    let modes: &[(RemovalMode, &str)] = match args.mode {
        ModeArg::Edge => &[(RemovalMode::Edge, "edge")],
        ModeArg::Node => &[(RemovalMode::Node, "node")],
        ModeArg::Both => &[(RemovalMode::Edge, "edge"), (RemovalMode::Node, "node")],
    };
    let mut series: Vec<(String, Vec<RobustnessPoint>)> = Vec::new();
    for &(mode, name) in modes {
        let schedule = RemovalSchedule {
            mode,
            step_fraction: args.step,
            max_fraction: args.max,
            trials: args.trials,
            rng_seed: args.seed,
        };
        for (label, set) in [("rsi", &spanners), ("comparison", &comparison)] {
            let points = simulate_removal(&data.graph, &data.communities, set, &schedule)?;
            series.push((format!("{label}-{name}"), points));
        }
    }
    let borrowed: Vec<(&str, &[RobustnessPoint])> = series.iter().map(|(l, p)| (l.as_str(), p.as_slice())).collect();
    let mut out = output(args.out.as_deref())?;
    write_robustness_csv(&mut out, &borrowed)?;
    out.flush().map_err(write_failed)?;
    Ok(())
}

fn cmd_shii(args: &ShiiArgs, log: &Log) -> CliResult {
    let data = load(&args.input, log)?;
    let seeds = match &args.vertices {
        Some(path) => read_set(path, &data.graph)?,
        None => {
            let (scores, border) = ranking_scores(&data, &args.targets, None, log)?;
            if border.is_empty() {
                return Err(Failure::Input("no border vertices to select from".into()));
            }
            top_k(&scores, args.set_size.min(border.len())).vertices()
        }
    };
    let config = DiffusionConfig {
        model: match args.model {
            ModelArg::Ic => DiffusionModel::IndependentCascade,
            ModelArg::Lt => DiffusionModel::LinearThreshold,
        },
        ic_probability: args.ic_probability,
        monte_carlo_runs: args.runs,
        rng_seed: args.seed,
    };
    let (per_seed, mean) = set_shii(&data.graph, &data.communities, &seeds, &config)?;
    let mut out = output(args.out.as_deref())?;
    write_shii_csv(&mut out, &per_seed)?;
    out.flush().map_err(write_failed)?;
    log.info(format!("mean SHII over {} vertices: {mean}", per_seed.len()));
    Ok(())
}

fn cmd_oracle(args: &OracleArgs, log: &Log) -> CliResult {
    let data = load(&args.input, log)?;
    let n = data.graph.vertex_count();
    if n > args.max_vertices && !args.force {
        return Err(Failure::Usage(format!(
            "graph has {n} vertices, above the oracle limit of {}; pass --force to run anyway",
            args.max_vertices
        )));
    }
    let t = targets(&args.targets, &data.communities, log)?;
    let run = score(&data.graph, &data.communities, &t);
    let reference = oracle_rsi(&data.graph, &data.communities, &t);
    let mut max_rel = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut worst = None;
    for v in data.graph.vertices() {
        let (a, b) = (run.scores.get(v), reference.get(v));
        let abs = (a - b).abs();
        let rel = if b != 0.0 {
            abs / b.abs()
        } else if abs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        max_abs = max_abs.max(abs);
        if rel > max_rel {
            max_rel = rel;
            worst = Some(v);
        }
    }
    println!(
        "vertices={n} border={} max_relative_deviation={max_rel:e} max_absolute_deviation={max_abs:e}",
        run.border.len()
    );
    if max_rel > args.tolerance && max_abs > 1e-12 {
        return Err(Failure::Check(format!(
            "deviation {max_rel:e} above tolerance {:e} at vertex {}",
            args.tolerance,
            worst.unwrap_or_default()
        )));
    }
    log.info("oracle agrees");
    Ok(())
}

fn cmd_info(args: &InfoArgs, log: &Log) -> CliResult {
    let data = load(&args.input, log)?;
    let g = &data.graph;
    let c = &data.communities;
    let border = find_border_vertices(g, c);
    let sizes = c.sizes();
    let smallest = sizes.values().copied().min().unwrap_or(0);
    let largest = sizes.values().copied().max().unwrap_or(0);
    let n = g.vertex_count();
    let mut out = output(None)?;
    let mut lines = vec![
        format!("vertices: {n}"),
        format!("edges: {}", g.edge_count()),
        format!("max_degree: {}", g.max_degree()),
        format!("communities: {}", c.community_count()),
        format!("smallest_community: {smallest}"),
        format!("largest_community: {largest}"),
        format!("border_vertices: {}", border.len()),
        format!("border_fraction: {}", border.len() as f64 / n as f64),
    ];
    let mut by_size: Vec<(u32, usize)> = sizes.iter().map(|(&id, &s)| (id, s)).collect();
    by_size.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let shown: Vec<String> = by_size.iter().take(10).map(|(id, s)| format!("{id}:{s}")).collect();
    lines.push(format!("largest_communities: {}", shown.join(" ")));
    if let Some(p) = args.p {
        let (lo, hi) = border_probability_bounds(n, smallest, largest, p)?;
        lines.push(format!("border_probability_bounds: [{lo}, {hi}]"));
        lines.push(format!(
            "expected_border_vertices: [{}, {}]",
            lo * n as f64,
            hi * n as f64
        ));
    }
    for l in lines {
        writeln!(out, "{l}").map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)?;
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    let log = Log {
        verbose: cli.verbose,
        quiet: cli.quiet,
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Score(a) => cmd_score(a, &log),
        Command::Eval(EvalCommand::Robustness(a)) => cmd_robustness(a, &log),
        Command::Eval(EvalCommand::Shii(a)) => cmd_shii(a, &log),
        Command::Oracle(a) => cmd_oracle(a, &log),
        Command::Info(a) => cmd_info(a, &log),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let summary: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with("tip:") && !l.starts_with("For more information"))
                .collect();
            eprintln!("{} (see --help)", summary.join(" "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
