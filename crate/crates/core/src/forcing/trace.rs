use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Hypergraph, Result, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingStep {
    pub forcer: usize,
    pub forced: usize,
}

/// Record of one run of a forcing process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingTrace {
    pub initial: VertexSet,
    pub steps: Vec<ForcingStep>,
    #[serde(rename = "final")]
    pub final_set: VertexSet,
}

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

impl ForcingTrace {
    /// Forced vertices, in order.
    pub fn forced(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.forced)
    }

    /// Replays the steps under the graph rule, checking that each forcer had
    /// exactly one unfilled neighbor and that the result is stalled.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let mut filled = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if filled.contains(step.forced) {
                return Err(invariant(format!("step {i} forces a filled vertex")));
            }
            let unfilled: Vec<usize> = g
                .neighbors(step.forcer)
                .iter()
                .copied()
                .filter(|&w| !filled.contains(w))
                .collect();
            if unfilled != [step.forced] {
                return Err(invariant(format!(
                    "step {i}: vertex {} has unfilled neighbors {unfilled:?}",
                    step.forcer
                )));
            }
            filled.insert(step.forced);
        }
        if filled != self.final_set {
            return Err(invariant("replay does not reproduce the final set".into()));
        }
        if let Some(v) = super::first_szf_rule_vertex(g, &filled) {
            return Err(Error::NotStalled { vertex: v });
        }
        Ok(())
    }

    /// Replays the steps under the hypergraph rule.
    pub fn verify_hyper(&self, h: &Hypergraph) -> Result<()> {
        let mut filled = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if filled.contains(step.forced) {
                return Err(invariant(format!("step {i} forces a filled vertex")));
            }
            let open = super::open_edges(h, &filled, step.forcer);
            if open.len() != 1 || !h.edges()[open[0]].contains(&step.forced) {
                return Err(invariant(format!(
                    "step {i}: vertex {} does not admit forcing {}",
                    step.forcer, step.forced
                )));
            }
            filled.insert(step.forced);
        }
        if filled != self.final_set {
            return Err(invariant("replay does not reproduce the final set".into()));
        }
        Ok(())
    }

    /// A matching of `g` saturating every forced vertex.
    ///
    /// Each vertex forces at most once and is forced at most once, so the
    /// forcing arcs form vertex-disjoint paths and 2-cycles. A 2-cycle gives
    /// its edge; a path contributes every other edge, counted back from its
    /// last vertex.
    pub fn matching(&self, g: &Graph) -> Result<Vec<(usize, usize)>> {
        let n = g.n();
        let mut next = vec![None; n];
        let mut prev = vec![None; n];
        for s in &self.steps {
            if next[s.forcer].replace(s.forced).is_some()
                || prev[s.forced].replace(s.forcer).is_some()
            {
                return Err(invariant("forcing arcs are not disjoint paths".into()));
            }
        }
        let mut used = vec![false; n];
        let mut edges = Vec::new();
        for v in 0..n {
            if used[v] {
                continue;
            }
            match (next[v], prev[v]) {
                (Some(w), Some(u)) if u == w => {
                    if v < w {
                        used[v] = true;
                        used[w] = true;
                        edges.push((v, w));
                    }
                }
                (None, Some(_)) => {
                    // `v` ends a path: take every other arc counted back from `v`.
                    let mut path = vec![v];
                    while let Some(p) = prev[*path.last().unwrap()] {
                        if path.len() > n {
                            return Err(invariant("forcing arcs contain a long cycle".into()));
                        }
                        path.push(p);
                    }
                    for pair in path.chunks_exact(2) {
                        used[pair[0]] = true;
                        used[pair[1]] = true;
                        edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
                    }
                }
                _ => {}
            }
        }
        edges.sort_unstable();
        for &(a, b) in &edges {
            if !g.has_edge(a, b) {
                return Err(invariant(format!("({a}, {b}) is not an edge")));
            }
        }
        let mut seen = vec![false; n];
        for &(a, b) in &edges {
            if std::mem::replace(&mut seen[a], true) || std::mem::replace(&mut seen[b], true) {
                return Err(invariant("constructed edges are not a matching".into()));
            }
        }
        if let Some(v) = self.forced().find(|&v| !seen[v]) {
            return Err(invariant(format!("forced vertex {v} is unsaturated")));
        }
        Ok(edges)
    }
}
