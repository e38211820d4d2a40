use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, VertexSet};

/// Simple undirected graph on the vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v` and sorted, so two
/// graphs with the same edge set compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Self> {
        Graph::new(value.n, value.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// Structural summary returned by [`Graph::structure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub edge_count: usize,
    pub is_connected: bool,
    pub component_count: usize,
    pub is_tree: bool,
    pub is_forest: bool,
    pub is_bipartite: bool,
    /// Present iff the graph is bipartite. The side containing vertex 0 of
    /// each component comes first.
    pub bipartition: Option<(VertexSet, VertexSet)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range
    /// endpoints. The error names the offending edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge {
                    edge: vec![u, v],
                    reason: format!("endpoint out of range for {n} vertices"),
                });
            }
            if u == v {
                return Err(Error::InvalidEdge {
                    edge: vec![u, v],
                    reason: "self-loop".into(),
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidEdge {
                    edge: vec![u, v],
                    reason: "duplicate edge".into(),
                });
            }
        }
        Ok(Self::from_normalized(n, seen.into_iter().collect()))
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of the edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Vertices of degree one.
    pub fn pendants(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Neighborhoods as bitmasks; requires `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "adjacency masks need n <= 64");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | 1 << w))
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// Copy of the graph without edge `uv`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let idx = self.edge_index(u, v).ok_or(Error::EdgeNotFound(u, v))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Self::from_normalized(self.n, edges))
    }

    /// Contracts edge `uv` into the vertex `min(u, v)`.
    ///
    /// Returns the contracted graph and the old-to-new vertex map. Vertices
    /// above `max(u, v)` shift down by one; loops vanish and parallel edges
    /// merge.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if self.edge_index(u, v).is_none() {
            return Err(Error::EdgeNotFound(u, v));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let map: Vec<usize> = (0..self.n)
            .map(|w| match w.cmp(&gone) {
                std::cmp::Ordering::Less => w,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => w - 1,
            })
            .collect();
        let edges: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (map[a], map[b]))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Ok((
            Self::from_normalized(self.n - 1, edges.into_iter().collect()),
            map,
        ))
    }

    /// Subgraph induced by `keep`, relabeled in increasing order. Also
    /// returns the new-to-old map.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep.contains(a) && keep.contains(b))
            .map(|&(a, b)| (new_of[a], new_of[b]))
            .collect();
        (Self::from_normalized(old.len(), edges), old)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `src`; unreachable vertices get `None`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Proper 2-coloring (`false`/`true`) if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for &y in &self.adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn structure(&self) -> GraphReport {
        let comps = self.components().len();
        let coloring = self.two_coloring();
        let bipartition = coloring.as_ref().map(|c| {
            (
                VertexSet::from_members(self.n, (0..self.n).filter(|&v| !c[v])),
                VertexSet::from_members(self.n, (0..self.n).filter(|&v| c[v])),
            )
        });
        GraphReport {
            n: self.n,
            edge_count: self.edges.len(),
            is_connected: self.n <= 1 || comps == 1,
            component_count: comps,
            is_tree: self.n >= 1 && comps == 1 && self.edges.len() + 1 == self.n,
            is_forest: self.edges.len() + comps == self.n,
            is_bipartite: coloring.is_some(),
            bipartition,
        }
    }

    /// Returns an error unless the graph is a tree.
    pub fn require_tree(&self) -> Result<()> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(Error::UnsupportedClass("input graph is not a tree".into()))
        }
    }

    pub fn require_bipartite(&self) -> Result<Vec<bool>> {
        self.two_coloring()
            .ok_or_else(|| Error::UnsupportedClass("input graph is not bipartite".into()))
    }
}
