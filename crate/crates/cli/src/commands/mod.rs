//! One module per subcommand, plus helpers they share.

pub mod classify;
pub mod compose;
pub mod delta;
pub mod entropy;
pub mod extensivity;
pub mod gen;
pub mod maxent;
pub mod ordinal;

use std::path::Path;

use groupent::{EntropyParams, EntropySpec, LimitPolicy};

use crate::error::{CliError, CliResult};
use crate::input::JsonArg;

/// A value that must come from a flag or the config file.
pub fn require<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Input(format!("missing required argument --{flag}")))
}

/// Parses an entropy specification; malformed JSON or unknown keys are input
/// errors, inadmissible parameter values are domain errors.
pub fn entropy_spec(arg: &JsonArg, limit: bool) -> CliResult<EntropySpec> {
    let params: EntropyParams =
        serde_json::from_value(arg.value("spec")?).map_err(|e| CliError::Input(format!("spec: {e}")))?;
    let policy = if limit { LimitPolicy::Shannon } else { LimitPolicy::Reject };
    Ok(EntropySpec::from_params(&params, policy)?)
}

/// Writes a CSV table with every number formatted to 12 significant digits.
pub fn write_csv(path: &Path, header: &[String], rows: &[Vec<f64>]) -> CliResult<()> {
    let io = |e: csv::Error| CliError::Input(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| crate::record::fmt_g12(x))).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
