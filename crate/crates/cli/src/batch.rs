//! Manifest-driven runs of many commands with expectation checks.

use std::fs;
use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command};
use crate::commands::execute;
use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Manifest {
    List(Vec<Instance>),
    Object { instances: Vec<Instance> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    /// Subcommand words, e.g. `"complete check"`.
    command: String,
    /// Generator spec, file path, or an inline graph object.
    #[serde(default)]
    input: Option<Value>,
    #[serde(default)]
    seed: Option<u64>,
    /// Flags as `name: value`; `true` emits a bare switch.
    #[serde(default)]
    flags: Map<String, Value>,
    /// Fields the payload must contain, compared recursively on objects.
    #[serde(default)]
    expect: Option<Value>,
    /// Error kind the command must fail with.
    #[serde(default)]
    expect_error: Option<String>,
}

impl Instance {
    fn input_arg(&self, base: &Path) -> Option<String> {
        match self.input.as_ref()? {
            Value::String(s) => {
                let local = base.join(s);
                if !Path::new(s).is_absolute() && local.is_file() {
                    Some(local.to_string_lossy().into_owned())
                } else {
                    Some(s.clone())
                }
            }
            other => Some(other.to_string()),
        }
    }

    fn argv(&self, base: &Path) -> Vec<String> {
        let mut argv = vec!["szf".to_string()];
        argv.extend(self.command.split_whitespace().map(String::from));
        argv.extend(self.input_arg(base));
        if let Some(seed) = self.seed {
            argv.extend(["--seed".to_string(), seed.to_string()]);
        }
        for (name, value) in &self.flags {
            match value {
                Value::Bool(true) => argv.push(format!("--{name}")),
                Value::Bool(false) | Value::Null => {}
                Value::String(s) => argv.extend([format!("--{name}"), s.clone()]),
                other => argv.extend([format!("--{name}"), other.to_string()]),
            }
        }
        argv
    }
}

/// Paths where `actual` differs from `expected`; object keys absent from
/// `expected` are ignored.
fn mismatches(expected: &Value, actual: &Value, at: &str, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (key, ev) in e {
                let path = format!("{at}/{key}");
                match a.get(key) {
                    Some(av) => mismatches(ev, av, &path, out),
                    None => out.push(format!("{path}: missing")),
                }
            }
        }
        _ if expected == actual => {}
        _ => out.push(format!("{at}: expected {expected}, got {actual}")),
    }
}

fn run_instance(index: usize, inst: &Instance, base: &Path) -> Value {
    let argv = inst.argv(base);
    let outcome = match Cli::try_parse_from(&argv) {
        Ok(Cli {
            command: Command::Batch { .. },
            ..
        }) => Err(CliError::Usage("batch cannot be nested".into())),
        Ok(cli) => execute(&cli.command),
        Err(e) => Err(CliError::Usage(e.to_string().trim().to_string())),
    };
    let mut problems = Vec::new();
    let mut record = json!({"index": index, "command": inst.command, "input": inst.input});
    match (&outcome, &inst.expect_error) {
        (Ok(payload), None) => {
            if let Some(expect) = &inst.expect {
                mismatches(expect, payload, "", &mut problems);
            }
        }
        (Ok(_), Some(kind)) => problems.push(format!("expected error `{kind}`, command succeeded")),
        (Err(e), Some(kind)) if e.kind() == kind => {}
        (Err(e), _) => problems.push(format!("{}: {e}", e.kind())),
    }
    match outcome {
        Ok(payload) => record["output"] = payload,
        Err(e) => record["error"] = e.to_json()["error"].clone(),
    }
    record["pass"] = json!(problems.is_empty());
    record["mismatches"] = json!(problems);
    record
}

/// Runs a manifest; the flag is true when every instance passed.
pub fn run_batch(manifest: &Path, jobs: usize) -> CliResult<(Value, bool)> {
    let body = fs::read_to_string(manifest)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", manifest.display())))?;
    let instances = match serde_json::from_str(&body)
        .map_err(|e| CliError::Input(format!("{}: {e}", manifest.display())))?
    {
        Manifest::List(v) | Manifest::Object { instances: v } => v,
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    let base = manifest.parent().unwrap_or(Path::new("."));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let results: Vec<Value> = pool.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| run_instance(i, inst, base))
            .collect()
    });
    let passed = results.iter().filter(|r| r["pass"] == json!(true)).count();
    let failed = results.len() - passed;
    let report = json!({
        "instances": results.len(),
        "passed": passed,
        "failed": failed,
        "results": results,
    });
    Ok((report, failed == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_matching() {
        let mut out = Vec::new();
        mismatches(&json!({"a": 1}), &json!({"a": 1, "b": 2}), "", &mut out);
        assert!(out.is_empty());
        mismatches(
            &json!({"a": {"c": [1]}}),
            &json!({"a": {"c": [2]}}),
            "",
            &mut out,
        );
        assert_eq!(out, vec!["/a/c: expected [1], got [2]"]);
        out.clear();
        mismatches(&json!({"z": true}), &json!({}), "", &mut out);
        assert_eq!(out, vec!["/z: missing"]);
    }

    #[test]
    fn argv_layout() {
        let inst: Instance = serde_json::from_value(json!({
            "command": "szf close",
            "input": {"n": 2, "edges": [[0, 1]]},
            "seed": 3,
            "flags": {"set": "", "pretty": false},
        }))
        .unwrap();
        let argv = inst.argv(Path::new("."));
        assert_eq!(
            argv,
            vec![
                "szf",
                "szf",
                "close",
                r#"{"edges":[[0,1]],"n":2}"#,
                "--seed",
                "3",
                "--set",
                ""
            ]
        );
    }
}
