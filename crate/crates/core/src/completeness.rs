//! SZF-completeness: whether every stalled set of a graph is the zero locus
//! of a nullvector. Also the graph constructions that preserve it, the
//! unique-perfect-matching test, and the triangle gadget relating SZF
//! numbers to zero forcing numbers.

use serde::Serialize;

use crate::error::check_cap;
use crate::forcing::is_szf_closed_mask;
use crate::linalg::{rank, KernelMatroid};
use crate::matching::Matching;
use crate::{Error, Graph, Result, VertexSet};

pub const DEFAULT_COMPLETENESS_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub verdict: bool,
    pub szf_closed_count: usize,
    pub realizable_count: usize,
    /// Stalled sets that are not realizable.
    pub witnesses: Vec<VertexSet>,
}

/// Compares the stalled sets with the flats of the kernel matroid.
///
/// Every flat is checked to be stalled; a flat that is not would be an
/// invariant failure.
pub fn is_szf_complete(g: &Graph, n_cap: usize) -> Result<CompletenessReport> {
    check_cap(g.n(), n_cap, "completeness enumerates every subset")?;
    let n = g.n();
    let adj = g.adjacency_masks();
    let mut flats = KernelMatroid::new(g).flats();
    flats.sort_unstable();
    if let Some(&f) = flats.iter().find(|&&f| !is_szf_closed_mask(&adj, f)) {
        return Err(Error::Invariant(format!(
            "realizable set {:?} is not stalled",
            VertexSet::from_mask(n, f)
        )));
    }
    let mut szf_closed_count = 0;
    let mut witnesses = Vec::new();
    for s in (0..1u64 << n).filter(|&s| is_szf_closed_mask(&adj, s)) {
        szf_closed_count += 1;
        if flats.binary_search(&s).is_err() {
            witnesses.push(VertexSet::from_mask(n, s));
        }
    }
    Ok(CompletenessReport {
        verdict: witnesses.is_empty(),
        szf_closed_count,
        realizable_count: flats.len(),
        witnesses,
    })
}

/// Adds a path `x–y–z` on two new vertices `y = n`, `z = n + 1`.
pub fn append_path2(g: &Graph, x: usize) -> Result<Graph> {
    g.check_vertex(x)?;
    let n = g.n();
    let edges = g.edges().iter().copied().chain([(x, n), (n, n + 1)]);
    Graph::new(n + 2, edges)
}

/// Replaces the edge `uv` by the path `u–x₁–x₂–x₃–x₄–v` on new vertices
/// `n..n+4`.
pub fn subdivide5(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    let base = g.delete_edge(u, v)?;
    let n = g.n();
    let path = [
        (u, n),
        (n, n + 1),
        (n + 1, n + 2),
        (n + 2, n + 3),
        (n + 3, v),
    ];
    Graph::new(n + 4, base.edges().iter().copied().chain(path))
}

/// Unique perfect matching test by pendant stripping.
///
/// A pendant vertex and its neighbor are matched in every perfect matching,
/// so removing both preserves the answer. A nonempty remainder with no
/// pendant vertex has no unique perfect matching.
pub fn is_upm(g: &Graph) -> Result<(bool, Option<Matching>)> {
    let side = g.require_bipartite()?;
    let n = g.n();
    if 2 * side.iter().filter(|&&s| s).count() != n {
        return Ok((false, None));
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut matched = Vec::new();
    for _ in 0..n / 2 {
        let Some(p) = (0..n).find(|&v| alive[v] && degree[v] == 1) else {
            return Ok((false, None));
        };
        let q = *g
            .neighbors(p)
            .iter()
            .find(|&&w| alive[w])
            .expect("degree counts live neighbors");
        for x in [p, q] {
            alive[x] = false;
            for &w in g.neighbors(x) {
                degree[w] -= 1;
            }
        }
        matched.push((p, q));
    }
    if alive.iter().any(|&a| a) {
        return Ok((false, None));
    }
    Ok((true, Some(Matching::new(g, matched)?)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpmCheck {
    pub complete: bool,
    pub upm: bool,
    pub agree: bool,
}

/// Compares completeness with the unique perfect matching property on a
/// nonsingular bipartite graph.
pub fn check_upm_theorem(g: &Graph, n_cap: usize) -> Result<UpmCheck> {
    g.require_bipartite()?;
    if rank(g) != g.n() {
        return Err(Error::Hypothesis("graph is singular".into()));
    }
    let complete = is_szf_complete(g, n_cap)?.verdict;
    let (upm, _) = is_upm(g)?;
    Ok(UpmCheck {
        complete,
        upm,
        agree: complete == upm,
    })
}

/// Triangle blow-up: vertex `v` becomes the triangle `3v, 3v+1, 3v+2`, and
/// each edge `vw` joins `3v` to `3w`.
pub fn gadget_blowup(g: &Graph) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(v, w)| (3 * v, 3 * w)).collect();
    for v in 0..g.n() {
        edges.extend([
            (3 * v, 3 * v + 1),
            (3 * v, 3 * v + 2),
            (3 * v + 1, 3 * v + 2),
        ]);
    }
    Graph::new(3 * g.n(), edges).expect("blow-up of a simple graph is simple")
}
