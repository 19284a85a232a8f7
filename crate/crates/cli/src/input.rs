//! Reading numeric files and JSON arguments.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::record::Fnv1a;

/// A JSON value given inline (`{...}`) or as a path to a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JsonArg(pub Value);

pub fn parse_json_arg(s: &str) -> Result<JsonArg, String> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        fs::read_to_string(s).map_err(|e| format!("{s}: {e}"))?
    };
    serde_json::from_str(&text).map(JsonArg).map_err(|e| e.to_string())
}

impl JsonArg {
    /// The JSON value; a string coming from a config file is read as
    /// inline JSON or a path, like the flag.
    pub fn value(&self, what: &str) -> CliResult<Value> {
        match &self.0 {
            Value::String(s) => parse_json_arg(s)
                .map(|a| a.0)
                .map_err(|e| CliError::Input(format!("{what}: {e}"))),
            v => Ok(v.clone()),
        }
    }

    pub fn decode<T: serde::de::DeserializeOwned>(&self, what: &str) -> CliResult<T> {
        serde_json::from_value(self.value(what)?).map_err(|e| CliError::json(what, e))
    }
}

fn read_bytes(path: &Path, digest: &mut Fnv1a) -> CliResult<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    digest.update(&bytes);
    Ok(bytes)
}

/// Rows of numbers from a CSV or newline-delimited file. Blank lines and
/// lines starting with `#` are skipped; a first row that is not numeric is
/// treated as a header.
pub fn read_rows(path: &Path, digest: &mut Fnv1a) -> CliResult<Vec<Vec<f64>>> {
    let bytes = read_bytes(path, digest)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(CliError::Input(format!(
                    "{}: record {}: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(rows)
}

/// All numbers of a file in reading order.
pub fn read_values(path: &Path, digest: &mut Fnv1a) -> CliResult<Vec<f64>> {
    let values: Vec<f64> = read_rows(path, digest)?.into_iter().flatten().collect();
    if values.is_empty() {
        return Err(CliError::Input(format!("{}: no numeric values", path.display())));
    }
    Ok(values)
}
