//! `csplab` command line. Exit codes: 0 success, 1 usage or config error, 2 capacity
//! or space-budget error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use csplab_core::algorithms::{AlgorithmSpec, TieSpec, REGISTRY};
use csplab_core::format::{parse_instance, write_instance};
use csplab_core::generators::GeneratorSpec;
use csplab_core::stream::{ExecutionPlan, Ordering, RunOptions};
use csplab_core::{seed, BruteForce, Rounding64};
use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::experiment::{estimate_advantage, gap_experiment, ratio_experiment};
use crate::experiment::{AdvantageConfig, GapConfig, RatioConfig};
use crate::sweep::{space_sweep, sweep_csv, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "csplab", version, about = "Streaming Max-CSP laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed override: generator seed, plan seed or master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Trial-count override for experiment configs.
    #[arg(long, global = true)]
    trials: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an instance from a generator spec (JSON).
    Gen { spec: PathBuf },
    /// Print the optimum value of an instance file.
    Solve {
        instance: PathBuf,
        /// Exhaustive search (the only solver).
        #[arg(long)]
        exact: bool,
        /// Also print a lexicographically smallest optimal assignment.
        #[arg(long)]
        witness: bool,
    },
    /// Run one streaming algorithm over an instance file.
    Run(RunArgs),
    /// Advantage over a space/pass grid (config JSON to CSV).
    Sweep { config: PathBuf },
    /// Exact optimum distributions of a Yes/No spec pair.
    Gapcheck { config: PathBuf },
    /// Distinguishing advantage of one algorithm on a Yes/No spec pair.
    Advantage { config: PathBuf },
    /// Approximation ratios against brute-force optima.
    Ratio { config: PathBuf },
    /// List registered algorithms.
    Algos,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    instance: PathBuf,
    #[arg(long)]
    algo: String,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    space_bits: Option<u64>,
    #[arg(long)]
    sample_constant: Option<f64>,
    #[arg(long)]
    counter_bits: Option<u32>,
    /// one | zero | coin
    #[arg(long)]
    tie: Option<String>,
    /// Rounding rule as JSON, e.g. '{"kind":"constant","p":0.5}'.
    #[arg(long)]
    rounding: Option<String>,
    #[arg(long)]
    walkers: Option<usize>,
    #[arg(long)]
    walk_length: Option<usize>,
    /// Execution plan JSON; the flags below override its fields.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// adversarial | random
    #[arg(long)]
    ordering: Option<String>,
    #[arg(long)]
    passes: Option<usize>,
    /// Check that every state survives its own encoding.
    #[arg(long)]
    verify_roundtrip: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|source| Error::Json {
        context: path.display().to_string(),
        source,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_ordering(s: &str) -> Result<Ordering> {
    match s {
        "adversarial" => Ok(Ordering::Adversarial),
        "random" => Ok(Ordering::Random),
        _ => Err(Error::Usage(format!("unknown ordering `{s}`"))),
    }
}

fn parse_tie(s: &str) -> Result<TieSpec> {
    match s {
        "one" => Ok(TieSpec::One),
        "zero" => Ok(TieSpec::Zero),
        "coin" => Ok(TieSpec::Coin),
        _ => Err(Error::Usage(format!("unknown tie rule `{s}`"))),
    }
}

fn run(args: RunArgs, cli_seed: Option<u64>) -> Result<String> {
    let inst = parse_instance(&read(&args.instance)?)?;
    let mut plan: ExecutionPlan = match &args.plan {
        Some(p) => read_json(p)?,
        None => ExecutionPlan::default(),
    };
    if let Some(o) = &args.ordering {
        plan.ordering = parse_ordering(o)?;
    }
    if let Some(p) = args.passes {
        plan.passes = p;
    }
    if let Some(s) = cli_seed {
        plan.seed = s;
    }
    let mut spec = AlgorithmSpec::new(&args.algo);
    spec.eps = args.eps;
    spec.space_bits = args.space_bits;
    spec.sample_constant = args.sample_constant;
    spec.counter_bits = args.counter_bits;
    spec.tie = args.tie.as_deref().map(parse_tie).transpose()?;
    spec.rounding = args
        .rounding
        .as_deref()
        .map(|r| {
            serde_json::from_str::<Rounding64>(r).map_err(|source| Error::Json {
                context: "--rounding".into(),
                source,
            })
        })
        .transpose()?;
    spec.walkers = args.walkers;
    spec.walk_length = args.walk_length;
    let alg = spec.build(&inst, &plan)?;
    let summary = alg.run(
        &inst,
        &plan,
        RunOptions {
            verify_roundtrip: args.verify_roundtrip,
        },
    )?;
    Ok(format!("{}\n", summary.output))
}

fn execute(cli: Cli) -> Result<()> {
    let text = match cli.command {
        Command::Gen { spec } => {
            let mut spec: GeneratorSpec = read_json(&spec)?;
            if let Some(s) = cli.seed {
                spec = spec.with_seed(s);
            }
            write_instance(&spec.generate()?.instance)
        }
        Command::Solve {
            instance,
            exact,
            witness,
        } => {
            if !exact {
                return Err(Error::Usage("solve needs --exact".into()));
            }
            let inst = parse_instance(&read(&instance)?)?;
            let (best, arg) = BruteForce::from_env().max_value(&inst)?;
            if witness {
                format!("{best}\n{arg}\n")
            } else {
                format!("{best}\n")
            }
        }
        Command::Run(args) => run(args, cli.seed)?,
        Command::Sweep { config } => {
            let mut cfg: SweepConfig = read_json(&config)?;
            cfg.seed = cli.seed.unwrap_or(cfg.seed);
            cfg.trials = cli.trials.unwrap_or(cfg.trials);
            sweep_csv(&space_sweep(&cfg)?)?
        }
        Command::Gapcheck { config } => {
            let mut cfg: GapConfig = read_json(&config)?;
            if let Some(s) = cli.seed {
                cfg.yes = cfg.yes.with_seed(seed::derive(s, 0));
                cfg.no = cfg.no.with_seed(seed::derive(s, 1));
            }
            cfg.trials = cli.trials.unwrap_or(cfg.trials);
            gap_experiment(&cfg)?.to_json()
        }
        Command::Advantage { config } => {
            let mut cfg: AdvantageConfig = read_json(&config)?;
            cfg.seed = cli.seed.unwrap_or(cfg.seed);
            cfg.trials = cli.trials.unwrap_or(cfg.trials);
            estimate_advantage(&cfg)?.to_json()
        }
        Command::Ratio { config } => {
            let mut cfg: RatioConfig = read_json(&config)?;
            cfg.seed = cli.seed.unwrap_or(cfg.seed);
            cfg.trials = cli.trials.unwrap_or(cfg.trials);
            ratio_experiment(&cfg)?.to_json()
        }
        Command::Algos => REGISTRY
            .iter()
            .map(|a| {
                format!(
                    "{:<18} {:<8} params [{}]  state bits: {}\n",
                    a.id,
                    format!("{:?}", a.mode).to_lowercase(),
                    a.params.join(", "),
                    a.state_bits
                )
            })
            .collect(),
    };
    emit(&cli.out, &text)
}

/// Parses `argv` (program name first), runs, and returns the process exit code.
pub fn main_with<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("csplab: error: {msg}");
            e.exit_code()
        }
    }
}
