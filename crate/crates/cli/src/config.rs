//! Flat `key = value` experiment files.
//!
//! ```text
//! # comment
//! experiment = census
//! q = 8
//! relation = similarity
//! include_degenerate = true
//! ```
//!
//! Each key becomes the flag of the same name (underscores read as dashes);
//! `true` turns on a switch and `false` leaves it off.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: BTreeMap<String, String>,
}

pub fn parse_config(text: &str) -> CliResult<ExperimentConfig> {
    let mut params = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::bad_input(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::bad_input(format!("config line {}: empty key", i + 1)));
        }
        if params.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::bad_input(format!("config line {}: duplicate key {key:?}", i + 1)));
        }
    }
    let experiment = params
        .remove("experiment")
        .ok_or_else(|| CliError::bad_input("config has no `experiment` key"))?;
    if experiment == "run" {
        return Err(CliError::bad_input("a config file cannot run another config"));
    }
    Ok(ExperimentConfig { experiment, params })
}

pub fn read_config(path: &Path) -> CliResult<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

impl ExperimentConfig {
    /// Command-line words equivalent to the file.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.experiment.clone()];
        for (k, v) in &self.params {
            match v.as_str() {
                "false" => {}
                "true" => args.push(format!("--{k}")),
                _ => {
                    args.push(format!("--{k}"));
                    args.push(v.clone());
                }
            }
        }
        args
    }
}
