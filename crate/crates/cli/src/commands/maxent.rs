use std::path::PathBuf;

use groupent::maxent::{maximize, verify_qexponential_form, EnergyConstraint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{entropy_spec, require};
use crate::config;
use crate::error::{CliError, CliResult};
use crate::input::{parse_json_arg, read_values, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

/// Exit code when the solver stops without reaching the stationarity
/// tolerance.
const NOT_CONVERGED: u8 = 4;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Entropy specification as inline JSON or a JSON file.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<JsonArg>,

    /// `{"levels": [...], "mean_target": E}`.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg, conflicts_with_all = ["levels", "levels_file", "mean"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint: Option<JsonArg>,

    /// Energy levels, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "levels_file")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<f64>>,

    /// Energy levels read from a file.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels_file: Option<PathBuf>,

    /// Target mean energy.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,

    /// Accept order 1 for Tsallis and Rényi as the Shannon limit.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub limit: bool,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let args: Args = config::resolve("maxent", &args, cfg)?;
    let spec = entropy_spec(&require(args.spec.clone(), "spec")?, args.limit)?;
    let mut digest = Fnv1a::default();
    let constraint: EnergyConstraint = match (&args.constraint, &args.levels, &args.levels_file) {
        (Some(c), None, None) if args.mean.is_none() => c.decode("constraint")?,
        (None, Some(levels), None) => EnergyConstraint::new(levels.clone(), require(args.mean, "mean")?)?,
        (None, None, Some(path)) => EnergyConstraint::new(read_values(path, &mut digest)?, require(args.mean, "mean")?)?,
        (None, None, None) => {
            return Err(CliError::Input("give --constraint, or --levels or --levels-file with --mean".into()))
        }
        _ => return Err(CliError::Input("--constraint excludes --levels, --levels-file and --mean".into())),
    };
    let result = maximize(&spec, &constraint)?;
    let fit = verify_qexponential_form(&result, &spec);
    let code = if result.converged { 0 } else { NOT_CONVERGED };
    let outputs = json!({
        "result": result,
        "qexp_fit": fit,
    });
    let record = RunRecord::new("maxent", serde_json::to_value(&args).unwrap(), &digest, outputs);
    let warning = (code != 0).then(|| {
        format!(
            "solver stopped after {} iterations with stationarity norm {:e}",
            result.iterations, result.stationarity_norm
        )
    });
    Ok(Outcome {
        record,
        data: None,
        warning,
        code,
    })
}
