use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use summa_core::Tolerances;

use crate::Common;

/// A problem with the config file or flags. Maps to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

/// Parses JSON, reporting the field path and line/column of the first error.
pub fn load<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            inner.to_string()
        } else {
            format!("at `{path}`: {inner}")
        }
    })
}

/// Flag, then `SUMMA_SEED`, then the config value.
pub fn resolve_seed(flag: Option<u64>, config: u64) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SUMMA_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| config_error(format!("SUMMA_SEED is not a u64: `{v}`"))),
        Err(_) => Ok(config),
    }
}

pub fn resolve_tolerances(common: &Common, config: Tolerances) -> anyhow::Result<Tolerances> {
    let t = Tolerances {
        exact: common.tol_exact.unwrap_or(config.exact),
        numeric: common.tol_numeric.unwrap_or(config.numeric),
        sampled: common.tol_sampled.unwrap_or(config.sampled),
    };
    for (name, v) in [
        ("exact", t.exact),
        ("numeric", t.numeric),
        ("sampled", t.sampled),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(config_error(format!(
                "tolerance `{name}` must be finite and >= 0, got {v}"
            )));
        }
    }
    Ok(t)
}

pub fn resolve_depth(flag: Option<u64>, config: Option<u64>, default: u64) -> anyhow::Result<u64> {
    let depth = flag.or(config).unwrap_or(default);
    if depth == 0 {
        return Err(config_error("depth must be >= 1"));
    }
    Ok(depth)
}

/// Ids end up in CSV cells, which are never quoted.
pub fn check_id(id: &str) -> anyhow::Result<()> {
    if id.is_empty() || id.contains([',', '\n', '\r', '|']) {
        return Err(config_error(format!(
            "id `{id}` must be nonempty and free of commas, pipes and newlines"
        )));
    }
    Ok(())
}
