//! Optional JSON config. Keys are the long flag names in snake_case; a
//! section named after the subcommand (and nested for `prescribe bour`,
//! `spectrum helicoid`, ...) takes precedence over top-level keys, and flags
//! given on the command line win over both.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{input, CliError, Result};

pub fn load(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line() as u64,
        msg: e.to_string(),
    })?;
    if !v.is_object() {
        return input(format!("{}: config must be a JSON object", path.display()));
    }
    Ok(v)
}

fn unset(v: &Value) -> bool {
    matches!(v, Value::Null | Value::Bool(false))
}

/// Fill every option of `args` that was not given on the command line from
/// the config sections along `path`.
pub fn merge<T: Serialize + DeserializeOwned>(args: T, cfg: Option<&Value>, path: &[&str]) -> Result<T> {
    let Some(cfg) = cfg else { return Ok(args) };
    let mut cur = match serde_json::to_value(&args) {
        Ok(Value::Object(m)) => m,
        _ => return Ok(args),
    };
    // most specific section first
    let mut layers: Vec<&Map<String, Value>> = Vec::new();
    let mut node = cfg;
    let mut chain = vec![cfg];
    for key in path {
        match node.get(*key) {
            Some(next @ Value::Object(_)) => {
                chain.push(next);
                node = next;
            }
            _ => break,
        }
    }
    let leaf_is_section = chain.len() == path.len() + 1 && !path.is_empty();
    for v in chain.iter().rev() {
        if let Value::Object(m) = v {
            layers.push(m);
        }
    }
    for (depth, layer) in layers.iter().enumerate() {
        for (k, v) in layer.iter() {
            match cur.get(k) {
                Some(existing) if unset(existing) && !v.is_object() => {
                    cur.insert(k.clone(), v.clone());
                }
                Some(_) => {}
                None if depth == 0 && leaf_is_section && !v.is_object() => {
                    return input(format!("config: unknown option '{k}' for '{}'", path.join(" ")));
                }
                None => {}
            }
        }
    }
    serde_json::from_value(Value::Object(cur)).map_err(|e| CliError::Input(format!("config: {e}")))
}
