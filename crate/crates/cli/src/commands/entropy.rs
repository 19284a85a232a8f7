use std::path::PathBuf;

use groupent::Distribution;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{entropy_spec, require};
use crate::config;
use crate::error::CliResult;
use crate::input::{parse_json_arg, read_values, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Probabilities, one per line or comma separated.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<PathBuf>,

    /// Entropy specification as inline JSON or a JSON file.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<JsonArg>,

    /// Accept order 1 for Tsallis and Rényi as the Shannon limit.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub limit: bool,

    /// Divide by the sum instead of rejecting unnormalized input.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub renormalize: bool,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let args: Args = config::resolve("entropy", &args, cfg)?;
    let spec = entropy_spec(&require(args.spec.clone(), "spec")?, args.limit)?;
    let mut digest = Fnv1a::default();
    let values = read_values(&require(args.dist.clone(), "dist")?, &mut digest)?;
    let p = Distribution::with_renormalize(values, args.renormalize)?;
    let value = spec.evaluate(&p)?;
    let outputs = json!({
        "value": value,
        "W": p.len(),
        "support": p.support_size(),
        "spec": spec,
        "shannon_limit": spec.is_shannon_limit(),
    });
    Ok(Outcome::ok(RunRecord::new("entropy", serde_json::to_value(&args).unwrap(), &digest, outputs)))
}
