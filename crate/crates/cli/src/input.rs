use std::fs;
use std::path::Path;

use serde_json::Value;
use szf_core::generate::{Generated, GeneratorSpec};
use szf_core::linalg::RationalVector;
use szf_core::{Graph, Hypergraph, VertexSet};

use crate::args::Source;
use crate::error::{CliError, CliResult};

/// Resolves a source to JSON: inline text starting with `{`, an existing
/// file, or otherwise a generator spec.
fn source_json(source: &Source) -> CliResult<Value> {
    let text = source.input.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()));
    }
    let path = Path::new(text);
    if path.is_file() {
        let body = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&body)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
    }
    if !text.contains(':') {
        return Err(CliError::Io(format!("no such file: {text}")));
    }
    let spec: GeneratorSpec = text.parse()?;
    let value = match spec.generate(source.seed)? {
        Generated::Graph(g) => serde_json::to_value(g),
        Generated::Hypergraph(h) => serde_json::to_value(h),
    };
    Ok(value.expect("graphs serialize"))
}

fn all_pairs(value: &Value) -> bool {
    value["edges"].as_array().is_some_and(|es| {
        es.iter()
            .all(|e| e.as_array().is_some_and(|e| e.len() == 2))
    })
}

pub fn load_graph(source: &Source) -> CliResult<Graph> {
    let value = source_json(source)?;
    if !all_pairs(&value) {
        return Err(CliError::Domain(szf_core::Error::UnsupportedClass(
            "expected a graph; input has an edge that is not a pair".into(),
        )));
    }
    serde_json::from_value(value).map_err(|e| CliError::Input(e.to_string()))
}

pub fn load_hypergraph(source: &Source) -> CliResult<Hypergraph> {
    serde_json::from_value(source_json(source)?).map_err(|e| CliError::Input(e.to_string()))
}

/// Either kind of input, decided by edge sizes unless `force_hyper`.
pub fn load_any(source: &Source, force_hyper: bool) -> CliResult<Generated> {
    let value = source_json(source)?;
    let parsed = if all_pairs(&value) && !force_hyper {
        serde_json::from_value(value).map(Generated::Graph)
    } else {
        serde_json::from_value(value).map(Generated::Hypergraph)
    };
    parsed.map_err(|e| CliError::Input(e.to_string()))
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Parses `"0,2,5"` into a set on `n` vertices.
pub fn parse_set(text: &str, n: usize) -> CliResult<VertexSet> {
    let members = split_list(text)
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--set: `{s}` is not a vertex index")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VertexSet::try_from_members(n, members)?)
}

pub fn parse_edge(text: &str) -> CliResult<(usize, usize)> {
    let parts: Vec<&str> = split_list(text).collect();
    let bad = || CliError::Usage(format!("--edge: expected `u,v`, got `{text}`"));
    match parts.as_slice() {
        [u, v] => Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

pub fn parse_vector(text: &str) -> CliResult<RationalVector> {
    RationalVector::parse(split_list(text)).map_err(|e| CliError::Usage(format!("--vector: {e}")))
}
