//! Command-line interface for conjectural-link ranking and restoration
//! experiments.
//!
//! Subcommands: `rank` scores one pair universe of a graph, `restore` runs
//! the damage/restoration protocol, `experiment` averages restoration
//! quality over generated graphs, and `generate` emits a random graph as an
//! edge list. Exit codes: 0 success, 2 usage/configuration error, 3
//! unreadable or malformed input, 4 numeric failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use conlink::output::fmt_score;
use conlink::{
    damage, restore_scenario_one, restore_scenario_two, run_grid, Error, ErrorCategory,
    GeneratorConfig, Graph, Horizon, Method, OutputRecord, Scenario, ScoreConfig, Universe,
};

#[derive(Parser)]
#[command(
    name = "conlink",
    version,
    about = "Rank conjectural links in undirected networks and test restoration quality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank node pairs of a graph under one scoring method
    Rank(RankArgs),
    /// Remove top-ranked links, then rank candidates for their restoration
    Restore(RestoreArgs),
    /// Average restoration quality over generated graph realizations
    Experiment(ExperimentArgs),
    /// Generate a random graph and emit it as an edge list
    Generate(GenerateArgs),
}

/// Graph source: a builtin dataset name (karate, lesmis), `@name` to force
/// builtin lookup, or a path to an edge-list file.
#[derive(Args)]
struct InputArg {
    #[arg(long, value_name = "GRAPH")]
    input: String,
}

#[derive(Args)]
struct WalkArgs {
    /// Weight per walk step for the h and sigma methods
    #[arg(long, value_name = "F", default_value_t = conlink::score::default_alpha())]
    alpha: f64,
    /// Maximum walk length for the finite horizon
    #[arg(long, value_name = "N", default_value_t = conlink::score::DEFAULT_P)]
    p: usize,
    /// Walk series horizon: finite or infinite (default: finite for h,
    /// infinite for sigma)
    #[arg(long, value_name = "HORIZON")]
    horizon: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: csv or json
    #[arg(long, value_name = "FMT", default_value = "csv")]
    format: String,
    /// Write the document here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArg,
    /// Scoring method: h, g, sigma, j, ad, or ra
    #[arg(long, value_name = "METHOD")]
    method: String,
    /// Pair universe to rank: nonadjacent or adjacent
    #[arg(long, value_name = "UNIVERSE", default_value = "nonadjacent")]
    universe: String,
    /// Keep only the best N pairs; 0 keeps all
    #[arg(long, value_name = "N", default_value_t = 0)]
    top: usize,
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RestoreArgs {
    #[command(flatten)]
    input: InputArg,
    /// Method that picks the links to remove
    #[arg(long, value_name = "METHOD")]
    remove: String,
    /// Method that ranks restoration candidates
    #[arg(long, value_name = "METHOD")]
    create: String,
    /// Number of links to remove
    #[arg(long, value_name = "N")]
    m: usize,
    /// 1: create links until all removed ones return; 2: create exactly m
    #[arg(long, value_name = "S", default_value = "1")]
    scenario: String,
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GeneratorArgs {
    /// Generator: ba (preferential attachment) or er (uniform random)
    #[arg(long, value_name = "KIND", default_value = "ba")]
    gen: String,
    /// Node count
    #[arg(long, value_name = "N", default_value_t = 100)]
    n: usize,
    /// ba: seed ring size
    #[arg(long, value_name = "N", default_value_t = 5)]
    m0: usize,
    /// ba: links added per new node
    #[arg(long, value_name = "N", default_value_t = 3)]
    attach: usize,
    /// er: edge probability
    #[arg(long, value_name = "PROB", default_value_t = 0.06)]
    p: f64,
    /// Generator seed
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Number of links to remove per realization
    #[arg(long, value_name = "N", default_value_t = 10)]
    m: usize,
    /// Generated graphs to average over
    #[arg(long, value_name = "N", default_value_t = 30)]
    realizations: usize,
    /// Methods for both grid axes, comma separated
    #[arg(
        long,
        value_name = "LIST",
        value_delimiter = ',',
        default_value = "h,g,j,ad,ra"
    )]
    methods: Vec<String>,
    /// Weight per walk step for walk-based methods
    #[arg(long, value_name = "F", default_value_t = conlink::score::default_alpha())]
    alpha: f64,
    /// Maximum walk length for walk-based methods
    #[arg(long, value_name = "N", default_value_t = conlink::score::DEFAULT_P)]
    walk_p: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Write the edge list here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rank(args) => cmd_rank(args),
        Command::Restore(args) => cmd_restore(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Generate(args) => cmd_generate(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e.category() {
        ErrorCategory::Config => 2,
        ErrorCategory::Input => 3,
        ErrorCategory::Numeric | ErrorCategory::Internal => 4,
    }
}

/// Builtin names resolve before paths; `@name` forces a builtin lookup for
/// the day a file is literally named `karate`.
fn load_input(src: &str) -> conlink::Result<Graph> {
    if let Some(name) = src.strip_prefix('@') {
        return Graph::builtin_dataset(name);
    }
    if matches!(src, "karate" | "lesmis") {
        return Graph::builtin_dataset(src);
    }
    let text = std::fs::read_to_string(src)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{src}: {e}"))))?;
    let loaded = Graph::load_edge_list(&text)?;
    for w in &loaded.warnings {
        eprintln!("warning: {src}: {w}");
    }
    Ok(loaded.graph)
}

fn parse_format(s: &str) -> conlink::Result<bool> {
    match s {
        "csv" => Ok(false),
        "json" => Ok(true),
        other => Err(Error::InvalidConfig(format!(
            "unknown format {other:?} (expected csv or json)"
        ))),
    }
}

fn build_config(method: &str, walk: &WalkArgs) -> conlink::Result<ScoreConfig> {
    let method = Method::parse(method)?;
    let mut cfg = ScoreConfig::new(method).with_alpha(walk.alpha).with_p(walk.p);
    if let Some(h) = &walk.horizon {
        cfg = cfg.with_horizon(Horizon::parse(h)?);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Canonical flag echo for walk parameters, present only when the method
/// set actually uses them.
fn walk_echo(cfgs: &[&ScoreConfig]) -> String {
    let walker = match cfgs.iter().find(|c| c.method.uses_walks()) {
        Some(c) => c,
        None => return String::new(),
    };
    match walker.horizon {
        Horizon::Finite => format!(
            " --alpha {} --p {} --horizon finite",
            fmt_score(walker.alpha),
            walker.p
        ),
        Horizon::Infinite => {
            format!(" --alpha {} --horizon infinite", fmt_score(walker.alpha))
        }
    }
}

fn emit(text: String, out: Option<&PathBuf>) -> conlink::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_rank(args: RankArgs) -> conlink::Result<()> {
    let json = parse_format(&args.output.format)?;
    let cfg = build_config(&args.method, &args.walk)?;
    let universe = Universe::parse(&args.universe)?;
    let graph = load_input(&args.input.input)?;
    let ranked = conlink::score(&graph, universe, &cfg)?;
    let command = format!(
        "rank --input {} --method {} --universe {} --top {}{} --format {}",
        args.input.input,
        cfg.method,
        universe.name(),
        args.top,
        walk_echo(&[&cfg]),
        args.output.format,
    );
    let record = OutputRecord::ranking(command, &graph, &ranked, args.top);
    emit(
        if json { record.to_json() } else { record.to_csv() },
        args.output.out.as_ref(),
    )
}

fn cmd_restore(args: RestoreArgs) -> conlink::Result<()> {
    let json = parse_format(&args.output.format)?;
    let removal = build_config(&args.remove, &args.walk)?;
    let creation = build_config(&args.create, &args.walk)?;
    let scenario = Scenario::parse(&args.scenario)?;
    if args.m == 0 {
        return Err(Error::InvalidConfig("need at least one removed link (--m)".into()));
    }
    let graph = load_input(&args.input.input)?;
    let rec = damage(&graph, &removal, args.m)?;
    let report = match scenario {
        Scenario::One => restore_scenario_one(&rec, &creation)?,
        Scenario::Two => restore_scenario_two(&rec, &creation)?,
    };
    let command = format!(
        "restore --input {} --remove {} --create {} --m {} --scenario {}{} --format {}",
        args.input.input,
        removal.method,
        creation.method,
        args.m,
        scenario.name(),
        walk_echo(&[&removal, &creation]),
        args.output.format,
    );
    let record = OutputRecord::restoration(command, &rec, &report);
    emit(
        if json { record.to_json() } else { record.to_csv() },
        args.output.out.as_ref(),
    )
}

fn build_generator(args: &GeneratorArgs) -> conlink::Result<GeneratorConfig> {
    let cfg = match args.gen.as_str() {
        "ba" => GeneratorConfig::ba(args.n, args.m0, args.attach, args.seed),
        "er" => GeneratorConfig::er(args.n, args.p, args.seed),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown generator {other:?} (expected ba or er)"
            )))
        }
    };
    cfg.validate()?;
    Ok(cfg)
}

fn generator_echo(args: &GeneratorArgs) -> String {
    match args.gen.as_str() {
        "ba" => format!(
            "--gen ba --n {} --m0 {} --attach {} --seed {}",
            args.n, args.m0, args.attach, args.seed
        ),
        _ => format!(
            "--gen er --n {} --p {} --seed {}",
            args.n,
            fmt_score(args.p),
            args.seed
        ),
    }
}

fn cmd_experiment(args: ExperimentArgs) -> conlink::Result<()> {
    let json = parse_format(&args.output.format)?;
    let gen_cfg = build_generator(&args.generator)?;
    let walk = WalkArgs { alpha: args.alpha, p: args.walk_p, horizon: None };
    let mut methods = Vec::with_capacity(args.methods.len());
    for name in &args.methods {
        methods.push(build_config(name, &walk)?);
    }
    let grid = run_grid(&gen_cfg, &methods, args.m, args.realizations, args.generator.seed)?;
    let names: Vec<&str> = methods.iter().map(|c| c.method.name()).collect();
    let command = format!(
        "experiment {} --m {} --realizations {} --methods {} --alpha {} --walk-p {} --format {}",
        generator_echo(&args.generator),
        args.m,
        args.realizations,
        names.join(","),
        fmt_score(args.alpha),
        args.walk_p,
        args.output.format,
    );
    let record = OutputRecord::experiment(command, &grid);
    emit(
        if json { record.to_json() } else { record.to_csv() },
        args.output.out.as_ref(),
    )
}

fn cmd_generate(args: GenerateArgs) -> conlink::Result<()> {
    let cfg = build_generator(&args.generator)?;
    let graph = conlink::generate(&cfg)?;
    let text = format!(
        "# generated: {}\n{}",
        generator_echo(&args.generator),
        graph.to_edge_list_text()
    );
    emit(text, args.out.as_ref())
}
