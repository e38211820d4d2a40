use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result};

/// Hypergraph on `0..n` whose edges have at least two distinct vertices.
/// Mixed edge sizes are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(value: HypergraphJson) -> Result<Self> {
        Hypergraph::new(value.n, value.edges)
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        HypergraphJson {
            n: h.n,
            edges: h.edges,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypergraphReport {
    pub n: usize,
    pub edge_count: usize,
    /// Sorted edge cardinalities.
    pub rank_profile: Vec<usize>,
    /// `Some(k)` when every edge has `k` vertices.
    pub uniform_rank: Option<usize>,
    pub is_linear: bool,
    /// No alternating vertex/edge cycle.
    pub is_hypertree: bool,
    pub is_connected: bool,
}

impl Hypergraph {
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        let mut seen = BTreeSet::new();
        for edge in edges {
            let raw: Vec<usize> = edge.into_iter().collect();
            let mut sorted = raw.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != raw.len() {
                return Err(Error::InvalidEdge {
                    edge: raw,
                    reason: "repeated vertex".into(),
                });
            }
            if sorted.len() < 2 {
                return Err(Error::InvalidEdge {
                    edge: raw,
                    reason: "edges need at least two vertices".into(),
                });
            }
            if let Some(&bad) = sorted.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidEdge {
                    edge: raw,
                    reason: format!("vertex {bad} out of range for {n} vertices"),
                });
            }
            if !seen.insert(sorted) {
                return Err(Error::InvalidEdge {
                    edge: raw,
                    reason: "duplicate edge".into(),
                });
            }
        }
        let edges: Vec<Vec<usize>> = seen.into_iter().collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Ok(Hypergraph {
            n,
            edges,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edges, each a sorted vertex list.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.edges.iter().map(Vec::len).collect();
        p.sort_unstable();
        p
    }

    pub fn min_rank(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    pub fn edge_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "edge masks need n <= 64");
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                if a.iter().filter(|v| b.binary_search(v).is_ok()).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Components of the incidence graph (vertices `0..n`, edge nodes
    /// `n..n+m`).
    fn incidence_component_count(&self) -> (usize, Vec<usize>) {
        let total = self.n + self.edges.len();
        let mut comp = vec![usize::MAX; total];
        let mut count = 0;
        for start in 0..total {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let nbrs: Vec<usize> = if x < self.n {
                    self.incidence[x].iter().map(|&i| self.n + i).collect()
                } else {
                    self.edges[x - self.n].clone()
                };
                for y in nbrs {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// True iff the vertex/edge incidence graph is a forest.
    pub fn is_hypertree(&self) -> bool {
        let (c, _) = self.incidence_component_count();
        let incidences: usize = self.edges.iter().map(Vec::len).sum();
        incidences + c == self.n + self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let (_, comp) = self.incidence_component_count();
        comp[..self.n].iter().all(|&c| c == comp[0])
    }

    pub fn is_linear_hypertree(&self) -> bool {
        self.is_hypertree() && self.is_linear()
    }

    pub fn structure(&self) -> HypergraphReport {
        let profile = self.rank_profile();
        let uniform_rank = match (profile.first(), profile.last()) {
            (Some(a), Some(b)) if a == b => Some(*a),
            _ => None,
        };
        HypergraphReport {
            n: self.n,
            edge_count: self.edges.len(),
            rank_profile: profile,
            uniform_rank,
            is_linear: self.is_linear(),
            is_hypertree: self.is_hypertree(),
            is_connected: self.is_connected(),
        }
    }

    /// Errors unless the hypergraph has no cycles and is linear.
    pub fn require_linear_hypertree(&self) -> Result<()> {
        if !self.is_hypertree() {
            return Err(Error::Hypothesis("hypergraph contains a cycle".into()));
        }
        if !self.is_linear() {
            return Err(Error::Hypothesis("hypergraph is not linear".into()));
        }
        Ok(())
    }
}

impl From<&Graph> for Hypergraph {
    fn from(g: &Graph) -> Self {
        Hypergraph::new(g.n(), g.edges().iter().map(|&(u, v)| [u, v]))
            .expect("graph edges are valid 2-edges")
    }
}
