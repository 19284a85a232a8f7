//! The `groupent` command line: batch access to group entropies, their
//! composition laws, maximum-entropy weights and ordinal-pattern statistics.
//!
//! Every command prints one JSON run record. Exit codes: 0 success, 2 input
//! or parse error, 3 domain or precondition error, 4 non-convergence.
//! [`run`] executes one invocation in-process with explicit output streams.

mod commands;
mod config;
mod error;
mod input;
mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::record::RunRecord;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "GROUPENT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "groupent", version, about = "Group entropies and ordinal-pattern complexity")]
struct Cli {
    /// JSON configuration file with one section per subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an entropy on a distribution file.
    Entropy(commands::entropy::Args),
    /// Compose two entropy values with the law of an entropy.
    Compose(commands::compose::Args),
    /// Scan S(N)/N on the uniform ensemble of a growth model.
    Extensivity(commands::extensivity::Args),
    /// Maximize an entropy under normalization and mean energy.
    Maxent(commands::maxent::Args),
    /// Interdependence measure of a joint distribution.
    Delta(commands::delta::Args),
    /// Ordinal-pattern statistics of a series.
    Ordinal(commands::ordinal::Args),
    /// Estimate the complexity class of a series.
    Classify(commands::classify::Args),
    /// Generate a synthetic series.
    Gen(commands::gen::Args),
}

/// What a command produced and how the process should end.
pub(crate) struct Outcome {
    pub record: RunRecord,
    /// Data for stdout; when present the record goes to stderr.
    pub data: Option<String>,
    /// Diagnostic for stderr, printed before the record.
    pub warning: Option<String>,
    pub code: u8,
}

impl Outcome {
    pub fn ok(record: RunRecord) -> Self {
        Self {
            record,
            data: None,
            warning: None,
            code: 0,
        }
    }
}

fn thread_pool(threads: Option<&str>) -> CliResult<Option<rayon::ThreadPool>> {
    let Some(raw) = threads else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| CliError::Input(format!("{THREADS_ENV}: {e}")))
}

fn dispatch(cli: Cli) -> CliResult<Outcome> {
    let config = config::load(cli.config.as_deref())?;
    let config = config.as_ref();
    match cli.command {
        Command::Entropy(a) => commands::entropy::run(a, config),
        Command::Compose(a) => commands::compose::run(a, config),
        Command::Extensivity(a) => commands::extensivity::run(a, config),
        Command::Maxent(a) => commands::maxent::run(a, config),
        Command::Delta(a) => commands::delta::run(a, config),
        Command::Ordinal(a) => commands::ordinal::run(a, config),
        Command::Classify(a) => commands::classify::run(a, config),
        Command::Gen(a) => commands::gen::run(a, config),
    }
}

fn emit(outcome: &Outcome, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
    if let Some(w) = &outcome.warning {
        writeln!(err, "warning: {w}")?;
    }
    match &outcome.data {
        Some(data) => {
            out.write_all(data.as_bytes())?;
            outcome.record.write_to(&mut *err)?;
        }
        None => outcome.record.write_to(&mut *out)?,
    }
    out.flush()?;
    err.flush()
}

/// Runs one invocation: `args` includes the program name, `threads` is the
/// value of [`THREADS_ENV`] if set. Returns the exit code.
pub fn run<I, T>(args: I, threads: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = thread_pool(threads).and_then(|pool| match pool {
        Some(pool) => pool.install(|| dispatch(cli)),
        None => dispatch(cli),
    });
    match result {
        Ok(outcome) => match emit(&outcome, out, err) {
            Ok(()) => outcome.code,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
