//! Command-line front end of the `sparse-mimo` binary.
//!
//! Exit codes: 0 on success, 1 for configuration and I/O errors (including
//! usage errors), 2 when a numerical contract is violated or a validation
//! check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiments::{
    check_result_file, run, run_invariant_suite, ExperimentConfig, ExperimentKind, OutputFormat,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sparse-mimo", version, about = "Sparse massive-MIMO channel experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulated vs analytical moments of the normalized inner product.
    Moments(RunArgs),
    /// Empirical CDFs of extreme eigenvalues and condition numbers.
    EigenCdf(RunArgs),
    /// Per-user sum capacity against antenna spacing.
    Capacity(CapacityArgs),
    /// Fast invariant suite; optionally re-checks result file hashes.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON configuration; missing keys take the experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output file; results go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to json for `.json` outputs and csv otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Record the wall-clock time in the metadata (breaks byte-identity).
    #[arg(long)]
    timestamp: bool,
}

#[derive(Debug, Args)]
struct CapacityArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Transmit SNR values; replaces `sweep.rho_values`.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    rho: Vec<f64>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Configuration file to parse and validate as well.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo trials for the moment check.
    #[arg(long, default_value_t = 4000)]
    trials: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Result files whose `config_hash` should be re-derived.
    #[arg(long, num_args = 1..)]
    check: Vec<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Config("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(f))
}

fn load_config(kind: ExperimentKind, args: &RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(kind, path)?,
        None => ExperimentConfig::defaults(kind),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if args.out.is_some() {
        cfg.output = args.out.clone();
    }
    Ok(cfg)
}

fn output_format(arg: Option<FormatArg>, out: Option<&Path>) -> OutputFormat {
    match arg {
        Some(FormatArg::Csv) => OutputFormat::Csv,
        Some(FormatArg::Json) => OutputFormat::Json,
        None if out.and_then(|p| p.extension()).is_some_and(|e| e == "json") => OutputFormat::Json,
        None => OutputFormat::Csv,
    }
}

fn execute(cfg: ExperimentConfig, args: &RunArgs) -> Result<()> {
    let mut table = with_threads(args.threads, || run(&cfg))??;
    if args.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        table.set_meta("timestamp", format!("unix:{secs}"));
    }
    let text = table.render(output_format(args.format, cfg.output.as_deref()));
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn validate(args: &ValidateArgs) -> Result<bool> {
    let mut outcomes = with_threads(args.threads, || run_invariant_suite(args.seed, args.trials))?;
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        let kind = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| serde_json::from_value::<ExperimentKind>(v.get("experiment")?.clone()).ok())
            .unwrap_or(ExperimentKind::Moments);
        let cfg = ExperimentConfig::from_file(kind, path)?;
        cfg.validate()?;
        println!("PASS config {}: valid {} configuration", path.display(), kind.name());
    }
    for path in &args.check {
        outcomes.push(check_result_file(path)?);
    }
    for o in &outcomes {
        println!("{}", o.line());
    }
    Ok(outcomes.iter().all(|o| o.passed))
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Moments(args) => execute(load_config(ExperimentKind::Moments, &args)?, &args)?,
        Command::EigenCdf(args) => execute(load_config(ExperimentKind::EigenCdf, &args)?, &args)?,
        Command::Capacity(args) => {
            let mut cfg = load_config(ExperimentKind::Capacity, &args.run)?;
            if !args.rho.is_empty() {
                cfg.sweep.rho_values = args.rho.clone();
            }
            execute(cfg, &args.run)?
        }
        Command::Validate(args) => {
            if !validate(&args)? {
                return Ok(EXIT_NUMERICAL);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
