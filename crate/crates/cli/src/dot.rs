//! Graphviz rendering of a thermal decomposition.

use std::fmt::Write;

use szf_core::matching::{EdgeClass, ThermalDecomposition};
use szf_core::VertexSet;

fn style(class: EdgeClass) -> &'static str {
    match class {
        EdgeClass::M => "solid",
        EdgeClass::O => "dashed",
        EdgeClass::F => "dotted",
    }
}

/// Undirected DOT graph: solid mandatory, dashed optional and dotted
/// forbidden edges, with the generating set filled.
pub fn thermal_dot(d: &ThermalDecomposition, generating: &VertexSet) -> String {
    let mut out = String::from("graph thermal {\n  node [shape=circle];\n");
    for v in 0..d.n {
        if generating.contains(v) {
            writeln!(out, "  {v} [style=filled, fillcolor=gray];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for e in &d.edges {
        writeln!(out, "  {} -- {} [style={}];", e.u, e.v, style(e.class)).unwrap();
    }
    out.push_str("}\n");
    out
}
