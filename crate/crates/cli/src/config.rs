//! Parameter files: flat `key = value` text and JSON objects are accepted
//! interchangeably. Every key must be consumed; leftovers are config errors.

use std::collections::BTreeMap;
use std::path::Path;

use kinkcharge::dimer::Vacuum;
use kinkcharge::lattice::{Boundary, Occupancy};
use kinkcharge::Interval;

use crate::CliError;

/// String-valued parameter map with unknown-key rejection.
#[derive(Debug, Clone, Default)]
pub struct ParamMap {
    entries: BTreeMap<String, String>,
}

impl ParamMap {
    pub fn from_file(path: &Path) -> Result<ParamMap, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Detects JSON (first non-space byte `{`) versus key=value text.
    pub fn parse(text: &str) -> Result<ParamMap, CliError> {
        if text.trim_start().starts_with('{') {
            let value: serde_json::Value = serde_json::from_str(text)
                .map_err(|e| CliError::Config(format!("invalid JSON config: {e}")))?;
            Self::from_json(value)
        } else {
            Self::from_key_value(text)
        }
    }

    fn from_key_value(text: &str) -> Result<ParamMap, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected key = value", i + 1))
            })?;
            let key = key.trim().to_string();
            if entries
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::Config(format!(
                    "config line {}: duplicate key {key}",
                    i + 1
                )));
            }
        }
        Ok(ParamMap { entries })
    }

    fn from_json(value: serde_json::Value) -> Result<ParamMap, CliError> {
        let object = value
            .as_object()
            .ok_or_else(|| CliError::Config("JSON config must be an object".into()))?;
        let mut entries = BTreeMap::new();
        for (key, v) in object {
            let rendered = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::Bool(b) => b.to_string(),
                serde_json::Value::Array(items) => {
                    let parts: Result<Vec<String>, CliError> = items
                        .iter()
                        .map(|item| match item {
                            serde_json::Value::Number(n) => Ok(n.to_string()),
                            serde_json::Value::String(s) => Ok(s.clone()),
                            other => Err(CliError::Config(format!(
                                "config key {key}: unsupported array element {other}"
                            ))),
                        })
                        .collect();
                    parts?.join(",")
                }
                other => {
                    return Err(CliError::Config(format!(
                        "config key {key}: unsupported value {other}"
                    )))
                }
            };
            entries.insert(key.clone(), rendered);
        }
        Ok(ParamMap { entries })
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Errors on any unconsumed key.
    pub fn finish(self) -> Result<(), CliError> {
        if let Some(key) = self.entries.keys().next() {
            return Err(CliError::Config(format!("unknown config key: {key}")));
        }
        Ok(())
    }
}

pub fn parse_usize(key: &str, raw: &str) -> Result<usize, CliError> {
    raw.trim()
        .parse()
        .map_err(|e| CliError::Config(format!("{key}: {e}")))
}

pub fn parse_f64(key: &str, raw: &str) -> Result<f64, CliError> {
    raw.trim()
        .parse()
        .map_err(|e| CliError::Config(format!("{key}: {e}")))
}

/// Comma list of site indices; empty string means no walls.
pub fn parse_walls(raw: &str) -> Result<Vec<usize>, CliError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| parse_usize("walls", part))
        .collect()
}

/// Comma list of floats.
pub fn parse_f64_list(key: &str, raw: &str) -> Result<Vec<f64>, CliError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| parse_f64(key, part))
        .collect()
}

/// `a:b` inclusive site interval.
pub fn parse_interval(key: &str, raw: &str) -> Result<Interval, CliError> {
    let (lo, hi) = raw
        .trim()
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("{key}: expected lo:hi, got {raw}")))?;
    let lo = parse_usize(key, lo)?;
    let hi = parse_usize(key, hi)?;
    if lo > hi {
        return Err(CliError::Config(format!("{key}: {lo}:{hi} is reversed")));
    }
    Ok(Interval::new(lo, hi))
}

pub fn parse_boundary(raw: &str) -> Result<Boundary, CliError> {
    match raw.trim() {
        "ring" => Ok(Boundary::Ring),
        "open" => Ok(Boundary::Open),
        other => Err(CliError::Config(format!(
            "boundary must be ring or open, got {other}"
        ))),
    }
}

pub fn parse_occupancy(raw: &str) -> Result<Occupancy, CliError> {
    match raw.trim() {
        "empty" => Ok(Occupancy::ZeroModesEmpty),
        "filled" => Ok(Occupancy::ZeroModesFilled),
        other => Err(CliError::Config(format!(
            "occupancy must be empty or filled, got {other}"
        ))),
    }
}

pub fn parse_vacuum(raw: &str) -> Result<Vacuum, CliError> {
    match raw.trim() {
        "A" | "a" => Ok(Vacuum::A),
        "B" | "b" => Ok(Vacuum::B),
        other => Err(CliError::Config(format!(
            "vacuum must be A or B, got {other}"
        ))),
    }
}
