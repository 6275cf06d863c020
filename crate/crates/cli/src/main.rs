use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mgsim::config::OutputFormat;
use mgsim::Config;

mod bridge;
mod commands;

use commands::{Outcome, RangeSpec};

#[derive(Parser)]
#[command(name = "mgsim", version)]
#[command(about = "Finite monadic Goedel algebras with involutive negation")]
struct Cli {
    /// JSON file with a Config object
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads (default: $MGSIM_THREADS, then one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized checks
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Algebra,
    Kripke,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmbedMode {
    FixedPoint,
    Functional,
}

#[derive(Subcommand)]
enum Command {
    /// Build a product of chains, optionally with quantifiers, and write it as JSON
    Build {
        /// Chain sizes of the factors, e.g. 3,3
        #[arg(long, value_delimiter = ',', required = true)]
        chains: Vec<usize>,
        /// Quantifier range: diagonal, bounds, full or indices:<list>
        #[arg(long, conflicts_with = "functional")]
        range: Option<RangeSpec>,
        /// Build the functional algebra L^m over the (single) chain
        #[arg(long)]
        functional: Option<usize>,
        /// Write the algebra here and print a summary instead
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the G∼ and monadic laws of an algebra file
    Validate { file: PathBuf },
    /// Subdirect irreducibility and the (C) classification of a monadic algebra
    Classify { file: PathBuf },
    /// Bounded search for a countermodel to premises |- goal
    Prove {
        /// Query file: premises one per line, goal on a final `|-` line
        query: Option<PathBuf>,
        #[arg(long, conflicts_with = "query")]
        goal: Option<String>,
        #[arg(long, requires = "goal")]
        premises: Vec<String>,
        #[arg(long, default_value_t = 27)]
        max_size: usize,
        /// Largest chain factor in the algebraic search
        #[arg(long)]
        max_factor: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[arg(long, default_value_t = 5)]
        max_chain: usize,
        /// Cap on (model, assignment) pairs examined
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "algebra")]
        semantics: SemanticsArg,
    },
    /// Embed a finite s.i. algebra into a larger or functional one
    Embed {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: EmbedMode,
        /// Sampled sequence coordinates (default from config)
        #[arg(long)]
        samples: Option<usize>,
        /// Write the target algebra here
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List the monadic structures on products of chains up to a size
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Only totally ordered ranges
        #[arg(long)]
        si_only: bool,
        /// Only s.i. CMG∼ algebras with a fixed point
        #[arg(long, conflicts_with = "si_only")]
        cmg_fixed_point: bool,
        /// Also write each algebra as <dir>/<index>.json
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Evaluate every shipped axiom and rule on a monadic algebra
    Soundness { file: PathBuf },
    /// Compare Kripke and functional-algebra evaluation on random inputs
    Bridge {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        max_worlds: usize,
        #[arg(long, default_value_t = 5)]
        max_chain: usize,
    },
}

fn config(cli: &Cli) -> anyhow::Result<Config> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_json(&std::fs::read_to_string(path)?)?,
        None => Config::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        };
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.check()?;
    Ok(cfg)
}

fn dispatch(cli: Cli, cfg: &Config) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Build { chains, range, functional, out } => {
            commands::build(&chains, range.as_ref(), functional, out.as_deref())
        }
        Command::Validate { file } => commands::validate(&file),
        Command::Classify { file } => commands::classify(&file),
        Command::Prove {
            query,
            goal,
            premises,
            max_size,
            max_factor,
            max_worlds,
            max_chain,
            budget,
            semantics,
        } => {
            let mut q = commands::load_query(query.as_deref(), goal.as_deref(), &premises)?;
            q.max_size = max_size;
            q.max_factor = max_factor.unwrap_or(usize::MAX);
            q.max_worlds = max_worlds;
            q.max_chain = max_chain;
            q.budget = budget;
            commands::prove(&q, semantics)
        }
        Command::Embed { file, mode, samples, out } => {
            commands::embed(&file, mode, samples.unwrap_or(cfg.sample_depth), out.as_deref())
        }
        Command::Enumerate { max_size, si_only, cmg_fixed_point, out_dir } => {
            commands::enumerate(max_size, si_only, cmg_fixed_point, cfg.max_enum_size, out_dir.as_deref())
        }
        Command::Soundness { file } => commands::soundness(&file),
        Command::Bridge { count, depth, vars, max_worlds, max_chain } => {
            bridge::run(cfg.seed, count, depth, vars, max_worlds, max_chain)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, OutputFormat)> {
    let cfg = config(&cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.effective_threads() {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let outcome = pool.install(|| dispatch(cli, &cfg))?;
    Ok((outcome, cfg.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, format)) => {
            match format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json value"))
                }
                OutputFormat::Text => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
