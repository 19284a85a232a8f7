//! Merging of command-line flags over a JSON configuration file.
//!
//! The file holds one object per subcommand, keyed by the subcommand name,
//! whose keys are the long flag names with underscores. Flags win over the
//! file and the file wins over built-in defaults.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub fn load(path: Option<&Path>) -> CliResult<Option<Value>> {
    let Some(path) = path else {
        return Ok(None);
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("config: {e}")))?;
    if !value.is_object() {
        return Err(CliError::Input("config file must contain a JSON object".into()));
    }
    Ok(Some(value))
}

/// Overlays the flags that were given on the config section for `command`.
pub fn resolve<T: Serialize + DeserializeOwned>(command: &str, flags: &T, config: Option<&Value>) -> CliResult<T> {
    let mut merged = match config.and_then(|c| c.get(command)) {
        Some(Value::Object(section)) => section.clone(),
        Some(_) => return Err(CliError::Input(format!("config section '{command}' must be an object"))),
        None => Map::new(),
    };
    let Value::Object(given) = serde_json::to_value(flags).expect("flags serialize") else {
        unreachable!("flag structs serialize to objects");
    };
    merged.extend(given);
    serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Input(format!("config section '{command}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;
    use serde_json::json;

    #[derive(Debug, Default, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Flags {
        #[serde(skip_serializing_if = "Option::is_none")]
        l_max: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        stride: Option<usize>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        limit: bool,
    }

    #[test]
    fn flags_override_config() {
        let cfg = json!({"ordinal": {"l_max": 7, "stride": 2, "limit": true}});
        let flags = Flags { l_max: Some(5), ..Default::default() };
        let r = resolve("ordinal", &flags, Some(&cfg)).unwrap();
        assert_eq!(r, Flags { l_max: Some(5), stride: Some(2), limit: true });
        let r = resolve("ordinal", &Flags::default(), None).unwrap();
        assert_eq!(r, Flags::default());
        let bad = json!({"ordinal": {"typo": 1}});
        assert!(resolve("ordinal", &Flags::default(), Some(&bad)).is_err());
    }
}
