use std::path::PathBuf;

use groupent::delta::{delta_terms, marginals, JointSystem};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{entropy_spec, require};
use crate::config;
use crate::error::{CliError, CliResult};
use crate::input::{parse_json_arg, read_rows, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Entropy specification as inline JSON or a JSON file.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<JsonArg>,

    /// Joint probabilities as a CSV matrix, one row per state of A.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint: Option<PathBuf>,

    /// Accept order 1 for Tsallis and Rényi as the Shannon limit.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub limit: bool,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let args: Args = config::resolve("delta", &args, cfg)?;
    let spec = entropy_spec(&require(args.spec.clone(), "spec")?, args.limit)?;
    let mut digest = Fnv1a::default();
    let path = require(args.joint.clone(), "joint")?;
    let rows = read_rows(&path, &mut digest)?;
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: no numeric rows", path.display())));
    }
    let sys = JointSystem::from_matrix(&rows)?;
    let terms = delta_terms(&spec, &sys)?;
    let (a, b) = marginals(&sys);
    let outputs = json!({
        "delta": terms.delta,
        "s_a": terms.s_a,
        "s_b": terms.s_b,
        "s_ab": terms.s_ab,
        "s_product": terms.s_product,
        "W_A": sys.w_a(),
        "W_B": sys.w_b(),
        "marginal_a": a.probs(),
        "marginal_b": b.probs(),
    });
    Ok(Outcome::ok(RunRecord::new("delta", serde_json::to_value(&args).unwrap(), &digest, outputs)))
}
