#![allow(dead_code)]

use clap::Parser;
use sasakian_cli::error::CliError;
use sasakian_cli::{run, Cli, Outcome};
use serde_json::Value;

pub fn invoke(args: &[&str]) -> Result<Outcome, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("sasprod").chain(args.iter().copied()))
        .unwrap_or_else(|e| panic!("{args:?} did not parse: {e}"));
    run(&cli)
}

/// Parsed JSON output of a successful invocation.
pub fn json(args: &[&str]) -> Value {
    let out = invoke(args).unwrap_or_else(|e| panic!("{args:?} failed: {e}"));
    assert_eq!(out.code, 0, "{args:?}");
    serde_json::from_str(&out.stdout).unwrap()
}

pub fn flag(v: &Value, path: &str) -> Value {
    path.split('.').fold(v.clone(), |acc, key| match key.parse::<usize>() {
        Ok(i) if acc.is_array() => acc[i].clone(),
        _ => acc[key].clone(),
    })
}
