use std::path::PathBuf;

use groupent::state_space::{extensivity_scan, scan_converged, DEFAULT_CONVERGENCE_THRESHOLD};
use groupent::StateSpaceModel;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{entropy_spec, require, write_csv};
use crate::config;
use crate::error::{CliError, CliResult};
use crate::input::{parse_json_arg, JsonArg};
use crate::record::{Fnv1a, RunRecord};
use crate::Outcome;

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Args {
    /// Entropy specification as inline JSON or a JSON file.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<JsonArg>,

    /// Growth model, e.g. `{"kind":"Exponential","k":2}`.
    #[arg(long, value_name = "JSON|FILE", value_parser = parse_json_arg)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<JsonArg>,

    /// Smallest N (default 1).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_min: Option<u64>,

    /// Largest N (default 100).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,

    /// Relative change of S/N below which the scan counts as converged.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,

    /// Write the table N,S,S_over_N here instead of into the record.
    #[arg(long, value_name = "FILE")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,

    /// Accept order 1 for Tsallis and Rényi as the Shannon limit.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub limit: bool,
}

pub fn run(args: Args, cfg: Option<&Value>) -> CliResult<Outcome> {
    let mut args: Args = config::resolve("extensivity", &args, cfg)?;
    let n_min = *args.n_min.get_or_insert(1);
    let n_max = *args.n_max.get_or_insert(100);
    let threshold = *args.threshold.get_or_insert(DEFAULT_CONVERGENCE_THRESHOLD);
    if n_min < 1 || n_min > n_max {
        return Err(CliError::Precondition(format!("need 1 <= n_min <= n_max, got {n_min} and {n_max}")));
    }
    let spec = entropy_spec(&require(args.spec.clone(), "spec")?, args.limit)?;
    let model: StateSpaceModel = require(args.model.clone(), "model")?.decode("model")?;
    let ns: Vec<u64> = (n_min..=n_max).collect();
    let rows = extensivity_scan(&spec, &model, &ns)?;
    let last = rows.last().expect("scan is non-empty");
    let mut outputs = json!({
        "rows": rows.len(),
        "last": {"N": last.n, "S": last.entropy, "S_over_N": last.entropy_per_component},
        "converged": scan_converged(&rows, threshold),
    });
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| vec![r.n as f64, r.entropy, r.entropy_per_component])
        .collect();
    match &args.csv {
        Some(path) => write_csv(path, &["N".into(), "S".into(), "S_over_N".into()], &table)?,
        None => outputs["table"] = json!(table),
    }
    Ok(Outcome::ok(RunRecord::new(
        "extensivity",
        serde_json::to_value(&args).unwrap(),
        &Fnv1a::default(),
        outputs,
    )))
}
