use std::path::PathBuf;

use groupent::ordinal::estimate_complexity_class;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::require;
use crate::config;
use crate::error::{CliError, CliResult};
use crate::input::read_values;
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Series, one value per line.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<PathBuf>,

    /// Smallest pattern length (default 3).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_min: Option<usize>,

    /// Largest pattern length (default 7, at most 9).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<usize>,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let mut args: Args = config::resolve("classify", &args, cfg)?;
    let lo = *args.l_min.get_or_insert(3);
    let hi = *args.l_max.get_or_insert(7);
    if lo > hi {
        return Err(CliError::Precondition(format!("l_min {lo} exceeds l_max {hi}")));
    }
    let mut digest = Fnv1a::default();
    let series = read_values(&require(args.series.clone(), "series")?, &mut digest)?;
    let estimate = estimate_complexity_class(&series, lo..=hi)?;
    let outputs = serde_json::to_value(&estimate).unwrap();
    Ok(Outcome::ok(RunRecord::new("classify", serde_json::to_value(&args).unwrap(), &digest, outputs)))
}
