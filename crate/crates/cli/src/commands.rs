use std::fs;

use serde::Deserialize;
use serde_json::{json, Value};
use szf_core::completeness::{check_upm_theorem, gadget_blowup, is_szf_complete, is_upm};
use szf_core::forcing::{
    enumerate_szf_closed, hyper_rule_witness, hyper_stalled_family, hyper_szf_derived_sets,
    szf_close, szf_number_exact, szf_number_greedy, zf_number_exact,
};
use szf_core::generate::{Generated, GeneratorSpec};
use szf_core::hypernull::{
    complete_hypergraph_report, construct_nullvector, is_nullvector, minimal_stalled_covers,
    stalled_iff_kernel_closed_check, zero_locus_is_cover,
};
use szf_core::linalg::{hat_closure, is_realizable, kernel_matroid, nullspace, witness_nullvector};
use szf_core::matching::{
    dm_decomposition, edge_rank_class, generating_set, generating_sets_all, thermal_decomposition,
    GeneratingRoute,
};
use szf_core::matroid::{gammoid_duality_check, verify_matroid, ClosedSetFamily, Provenance};

use crate::args::{
    Command, CompleteCommand, HyperCommand, KernelCommand, MatroidCommand, SzfCommand, TreeCommand,
    ZfCommand,
};
use crate::dot::thermal_dot;
use crate::error::{CliError, CliResult};
use crate::input::{load_any, load_graph, load_hypergraph, parse_edge, parse_set, parse_vector};

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("payload types serialize")
}

/// Family file accepted by `matroid verify`.
#[derive(Deserialize)]
struct FamilyFile {
    n: usize,
    family: Vec<Vec<usize>>,
    #[serde(default)]
    provenance: Option<Provenance>,
}

/// Runs one non-batch command and returns its payload.
pub fn execute(command: &Command) -> CliResult<Value> {
    match command {
        Command::Gen { spec, seed } => {
            let spec: GeneratorSpec = spec.parse()?;
            Ok(match spec.generate(*seed)? {
                Generated::Graph(g) => to_json(&g),
                Generated::Hypergraph(h) => to_json(&h),
            })
        }
        Command::Validate { source, hyper } => Ok(match load_any(source, *hyper)? {
            Generated::Graph(g) => json!({"kind": "graph", "report": g.structure()}),
            Generated::Hypergraph(h) => json!({"kind": "hypergraph", "report": h.structure()}),
        }),
        Command::Szf(c) => szf(c),
        Command::Zf(ZfCommand::Number { source, cap }) => {
            let g = load_graph(source)?;
            Ok(json!({"zf_number": zf_number_exact(&g, *cap)?}))
        }
        Command::Kernel(c) => kernel(c),
        Command::Tree(c) => tree(c),
        Command::Matroid(c) => matroid(c),
        Command::Complete(c) => complete(c),
        Command::Hyper(c) => hyper(c),
        Command::Batch { .. } => Err(CliError::Usage("batch cannot be nested".into())),
    }
}

fn szf(command: &SzfCommand) -> CliResult<Value> {
    match command {
        SzfCommand::Close { source, set } => {
            let g = load_graph(source)?;
            let s = parse_set(&set.set, g.n())?;
            let (closure, trace) = szf_close(&g, &s)?;
            Ok(json!({"closure": closure, "trace": trace}))
        }
        SzfCommand::Number { source, exact, cap } => {
            let g = load_graph(source)?;
            let greedy = szf_number_greedy(&g);
            let mut out = json!({"greedy": greedy.number, "chosen": greedy.chosen});
            if *exact {
                out["exact"] = json!(szf_number_exact(&g, *cap)?);
            }
            Ok(out)
        }
        SzfCommand::ClosedSets {
            source,
            cap,
            verify,
        } => {
            let g = load_graph(source)?;
            let mut family = enumerate_szf_closed(&g, *cap)?;
            if *verify {
                family = family.with_report(*cap)?;
            }
            Ok(to_json(&family))
        }
    }
}

fn kernel(command: &KernelCommand) -> CliResult<Value> {
    match command {
        KernelCommand::Nullspace { source } => Ok(to_json(&nullspace(&load_graph(source)?))),
        KernelCommand::Hat { source, set } => {
            let g = load_graph(source)?;
            let s = parse_set(&set.set, g.n())?;
            Ok(json!({"closure": hat_closure(&g, &s)?}))
        }
        KernelCommand::Realizable { source, set } => {
            let g = load_graph(source)?;
            let s = parse_set(&set.set, g.n())?;
            Ok(json!({
                "realizable": is_realizable(&g, &s)?,
                "closure": hat_closure(&g, &s)?,
            }))
        }
        KernelCommand::Witness { source, set } => {
            let g = load_graph(source)?;
            let s = parse_set(&set.set, g.n())?;
            Ok(json!({"vector": witness_nullvector(&g, &s)?}))
        }
        KernelCommand::Matroid { source, cap } => {
            let g = load_graph(source)?;
            Ok(to_json(&kernel_matroid(&g, *cap)?.with_report(*cap)?))
        }
    }
}

fn tree(command: &TreeCommand) -> CliResult<Value> {
    match command {
        TreeCommand::Thermal { source, dot } => {
            let t = load_graph(source)?;
            let d = thermal_decomposition(&t)?;
            if let Some(path) = dot {
                fs::write(path, thermal_dot(&d, &d.generating_set()))
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(to_json(&d))
        }
        TreeCommand::Dm { source } => Ok(to_json(&dm_decomposition(&load_graph(source)?)?)),
        TreeCommand::GeneratingSet {
            source,
            method,
            cap,
        } => {
            let t = load_graph(source)?;
            if method == "all" {
                let sets = generating_sets_all(&t, *cap)?;
                let agree = sets.windows(2).all(|w| w[0].1 == w[1].1);
                let routes: Vec<Value> = sets
                    .iter()
                    .map(|(r, s)| json!({"method": r.name(), "set": s}))
                    .collect();
                return Ok(json!({"agree": agree, "routes": routes}));
            }
            let route: GeneratingRoute = method
                .parse()
                .map_err(|e: szf_core::Error| CliError::Usage(format!("--method: {e}")))?;
            Ok(json!({"method": route.name(), "set": generating_set(&t, route, *cap)?}))
        }
        TreeCommand::RankClass { source, edge } => {
            let t = load_graph(source)?;
            let (u, v) = parse_edge(edge)?;
            Ok(to_json(&edge_rank_class(&t, u, v)?))
        }
    }
}

fn matroid(command: &MatroidCommand) -> CliResult<Value> {
    match command {
        MatroidCommand::Verify { family, cap } => {
            let body = fs::read_to_string(family)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", family.display())))?;
            let file: FamilyFile = serde_json::from_str(&body)
                .map_err(|e| CliError::Input(format!("{}: {e}", family.display())))?;
            if file.n > 63 {
                return Err(szf_core::Error::CapExceeded {
                    n: file.n,
                    cap: 63,
                    hint: "families are stored as 64-bit masks".into(),
                }
                .into());
            }
            let sets = file
                .family
                .iter()
                .map(|m| szf_core::VertexSet::try_from_members(file.n, m.iter().copied()))
                .collect::<szf_core::Result<Vec<_>>>()?;
            let provenance = file.provenance.unwrap_or(Provenance::Custom);
            let fam = ClosedSetFamily::from_sets(file.n, sets, provenance);
            Ok(to_json(&verify_matroid(&fam, *cap)?))
        }
        MatroidCommand::Gammoid { source, cap } => {
            Ok(to_json(&gammoid_duality_check(&load_graph(source)?, *cap)?))
        }
    }
}

fn complete(command: &CompleteCommand) -> CliResult<Value> {
    match command {
        CompleteCommand::Check { source, cap } => {
            Ok(to_json(&is_szf_complete(&load_graph(source)?, *cap)?))
        }
        CompleteCommand::Upm {
            source,
            theorem,
            cap,
        } => {
            let g = load_graph(source)?;
            let (upm, matching) = is_upm(&g)?;
            let mut out = json!({"upm": upm, "matching": matching.map(|m| m.edges().to_vec())});
            if *theorem {
                out["theorem"] = to_json(&check_upm_theorem(&g, *cap)?);
            }
            Ok(out)
        }
        CompleteCommand::Gadget {
            source,
            numbers,
            cap,
        } => {
            let g = load_graph(source)?;
            let blown = gadget_blowup(&g);
            let mut out = json!({"graph": blown});
            if *numbers {
                out["szf_number"] = json!(szf_number_exact(&blown, *cap)?);
                out["zf_number"] = json!(zf_number_exact(&g, *cap)?);
            }
            Ok(out)
        }
    }
}

fn hyper(command: &HyperCommand) -> CliResult<Value> {
    match command {
        HyperCommand::Stalled { source, set, cap } => {
            let h = load_hypergraph(source)?;
            let Some(set) = set else {
                return Ok(to_json(&hyper_stalled_family(&h, *cap)?));
            };
            let s = parse_set(set, h.n())?;
            let rule = hyper_rule_witness(&h, &s).map(|(v, e)| json!({"vertex": v, "edge": e}));
            Ok(json!({"stalled": rule.is_none(), "rule": rule}))
        }
        HyperCommand::Derived { source, set, cap } => {
            let h = load_hypergraph(source)?;
            let s = parse_set(&set.set, h.n())?;
            Ok(json!({"derived": hyper_szf_derived_sets(&h, &s, *cap)?}))
        }
        HyperCommand::Components { source, cap } => Ok(to_json(&minimal_stalled_covers(
            &load_hypergraph(source)?,
            *cap,
        )?)),
        HyperCommand::Nullvector {
            source,
            set,
            vector,
        } => {
            let h = load_hypergraph(source)?;
            match (set, vector) {
                (Some(set), None) => {
                    let s = parse_set(set, h.n())?;
                    let x = construct_nullvector(&h, &s)?;
                    Ok(json!({"vector": x, "zero_locus": x.zero_locus()}))
                }
                (None, Some(vector)) => {
                    let x = parse_vector(vector)?;
                    let ok = is_nullvector(&h, &x)?;
                    let mut out = json!({"nullvector": ok, "zero_locus": x.zero_locus()});
                    if ok && h.is_linear_hypertree() {
                        out["cover_edges"] = json!(zero_locus_is_cover(&h, &x)?);
                    }
                    Ok(out)
                }
                _ => Err(CliError::Usage(
                    "give exactly one of --set and --vector".into(),
                )),
            }
        }
        HyperCommand::CompleteReport { n, k } => Ok(to_json(&complete_hypergraph_report(*n, *k)?)),
        HyperCommand::Correspondence { source, cap } => {
            let h = load_hypergraph(source)?;
            let report = stalled_iff_kernel_closed_check(&h, *cap)?;
            let mut out = to_json(&report);
            out["agree"] = json!(report.agree());
            Ok(out)
        }
    }
}
