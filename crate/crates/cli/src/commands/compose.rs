use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{entropy_spec, require};
use crate::config;
use crate::error::CliResult;
use crate::input::{parse_json_arg, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Entropy specification whose composition law is used.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<JsonArg>,

    /// First entropy value.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,

    /// Second entropy value.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,

    /// Accept order 1 for Tsallis and Rényi as the Shannon limit.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub limit: bool,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let args: Args = config::resolve("compose", &args, cfg)?;
    let spec = entropy_spec(&require(args.spec.clone(), "spec")?, args.limit)?;
    let law = spec.group_law()?;
    let x = require(args.x, "x")?;
    let y = require(args.y, "y")?;
    let outputs = json!({
        "phi": law.compose(x, y)?,
        "inverse_x": law.inverse_element(x)?,
        "law": law,
    });
    Ok(Outcome::ok(RunRecord::new(
        "compose",
        serde_json::to_value(&args).unwrap(),
        &Fnv1a::default(),
        outputs,
    )))
}
