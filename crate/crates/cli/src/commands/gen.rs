use std::path::PathBuf;

use groupent::process::{add_observational_noise, logistic_map, white_noise, SplitMix64, LOGISTIC_R, LOGISTIC_TRANSIENT};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::require;
use crate::config;
use crate::error::{CliError, CliResult};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Process {
    WhiteNoise,
    Logistic,
}

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub process: Option<Process>,

    /// Number of samples.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,

    /// Seed of the white noise, or of the logistic start point when `--x0`
    /// is not given (default 1).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,

    /// Logistic parameter (default 4).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,

    /// Logistic start point in (0, 1).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,

    /// Discarded logistic iterates (default 1000).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transient: Option<usize>,

    /// Amplitude of added uniform observational noise (default 0).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_amplitude: Option<f64>,

    /// Seed of the observational noise (default seed + 1).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_seed: Option<u64>,

    /// Output file; without it the series goes to stdout and the record to
    /// stderr.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// A start point in (0, 1) drawn from `seed`.
fn seeded_start(seed: u64) -> f64 {
    let mut rng = SplitMix64::new(seed);
    loop {
        let x = rng.next_f64();
        if x > 0.0 {
            return x;
        }
    }
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let mut args: Args = config::resolve("gen", &args, cfg)?;
    let process = require(args.process, "process")?;
    let n = require(args.n, "n")?;
    let seed = *args.seed.get_or_insert(1);
    let mut series = match process {
        Process::WhiteNoise => {
            if args.r.is_some() || args.x0.is_some() || args.transient.is_some() {
                return Err(CliError::Input("--r, --x0 and --transient apply to the logistic map only".into()));
            }
            white_noise(n, seed)?
        }
        Process::Logistic => {
            let r = *args.r.get_or_insert(LOGISTIC_R);
            let x0 = *args.x0.get_or_insert_with(|| seeded_start(seed));
            let transient = *args.transient.get_or_insert(LOGISTIC_TRANSIENT);
            logistic_map(n, r, x0, transient)?
        }
    };
    let amplitude = *args.noise_amplitude.get_or_insert(0.0);
    if amplitude != 0.0 {
        let noise_seed = *args.noise_seed.get_or_insert(seed.wrapping_add(1));
        series = add_observational_noise(&series, amplitude, noise_seed)?;
    }

    let mut text = String::with_capacity(series.len() * 20);
    for x in &series {
        // Shortest representation that reads back to the same value.
        text.push_str(&format!("{x:?}\n"));
    }
    let mut digest = Fnv1a::default();
    digest.update(text.as_bytes());
    let data = match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
            None
        }
        None => Some(text),
    };
    let outputs = json!({
        "samples": series.len(),
        "series_digest": digest.hex(),
    });
    Ok(Outcome {
        record: RunRecord::new("gen", serde_json::to_value(&args).unwrap(), &Fnv1a::default(), outputs),
        data,
        warning: None,
        code: 0,
    })
}
