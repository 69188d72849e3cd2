//! Flag/config resolution: a --config JSON file supplies values for any
//! flag not given on the command line, under the flag's long name. Flags
//! always win. Run manifests are accepted directly (their "params"
//! object is used).

use std::path::Path;

use anyhow::Context;
use serde_json::{Map, Value};

use crate::{Format, Kind};

pub struct Ctx {
    cfg: Map<String, Value>,
}

impl Ctx {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let cfg = match path {
            None => Map::new(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                let value: Value = serde_json::from_str(&text)
                    .with_context(|| format!("parsing config {}", p.display()))?;
                let object = match value {
                    // A manifest carries its flag values under "params".
                    Value::Object(mut o) if o.contains_key("params") => match o.remove("params") {
                        Some(Value::Object(p)) => p,
                        _ => anyhow::bail!("config \"params\" must be an object"),
                    },
                    Value::Object(o) => o,
                    _ => anyhow::bail!("config must be a JSON object"),
                };
                object
            }
        };
        Ok(Ctx { cfg })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.cfg.get(key)
    }

    pub fn f64(&self, cli: Option<f64>, key: &str, default: f64) -> anyhow::Result<f64> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .with_context(|| format!("config key {key:?} must be a number")),
        }
    }

    pub fn u64(&self, cli: Option<u64>, key: &str, default: u64) -> anyhow::Result<u64> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .with_context(|| format!("config key {key:?} must be a non-negative integer")),
        }
    }

    pub fn u32(&self, cli: Option<u32>, key: &str, default: u32) -> anyhow::Result<u32> {
        Ok(self.u64(cli.map(u64::from), key, u64::from(default))? as u32)
    }

    pub fn usize(&self, cli: Option<usize>, key: &str, default: usize) -> anyhow::Result<usize> {
        Ok(self.u64(cli.map(|v| v as u64), key, default as u64)? as usize)
    }

    /// True when the flag was given or the config sets the key truthy.
    pub fn bool(&self, cli: bool, key: &str) -> anyhow::Result<bool> {
        if cli {
            return Ok(true);
        }
        match self.get(key) {
            None => Ok(false),
            Some(v) => v
                .as_bool()
                .with_context(|| format!("config key {key:?} must be a bool")),
        }
    }

    pub fn kind(&self, cli: Option<Kind>, key: &str, default: Kind) -> anyhow::Result<Kind> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.get(key).and_then(Value::as_str) {
            None => Ok(default),
            Some("noon") => Ok(Kind::Noon),
            Some("substate") => Ok(Kind::Substate),
            Some("noonvac") => Ok(Kind::Noonvac),
            Some("general") => Ok(Kind::General),
            Some(other) => anyhow::bail!("unknown spec kind {other:?} in config"),
        }
    }

    pub fn format(&self, cli: Option<Format>, default: Format) -> anyhow::Result<Format> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.get("format").and_then(Value::as_str) {
            None => Ok(default),
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some(other) => anyhow::bail!("unknown format {other:?} in config"),
        }
    }

    /// Comma-separated floats, from the flag, the config (string or
    /// array), or the default string.
    pub fn f64_list(
        &self,
        cli: Option<&str>,
        key: &str,
        default: &str,
    ) -> anyhow::Result<Vec<f64>> {
        let parse = |s: &str| -> anyhow::Result<Vec<f64>> {
            s.split(',')
                .map(|item| {
                    item.trim()
                        .parse::<f64>()
                        .with_context(|| format!("bad number {item:?} in {key}"))
                })
                .collect()
        };
        if let Some(s) = cli {
            let list = parse(s)?;
            anyhow::ensure!(!list.is_empty(), "{key} must not be empty");
            return Ok(list);
        }
        match self.get(key) {
            None => parse(default),
            Some(Value::String(s)) => parse(s),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_f64()
                        .with_context(|| format!("{key} entries must be numbers"))
                })
                .collect(),
            Some(_) => anyhow::bail!("config key {key:?} must be a string or array"),
        }
    }
}
