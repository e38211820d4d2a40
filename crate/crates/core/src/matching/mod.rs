//! Matchings and covers on trees and bipartite graphs, and the structures
//! built from them: thermal and Dulmage-Mendelsohn decompositions and the
//! generating set of a tree.

mod dm;
mod generating;
mod thermal;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use dm::{dm_decomposition, dm_decomposition_with, DmDecomposition};
pub use generating::{
    edge_rank_class, generating_set, generating_sets_all, EdgeRankReport, GeneratingRoute,
};
pub use thermal::{
    bc_tree_cover, is_bc_tree, thermal_decomposition, ComponentClass, EdgeClass, ThermalComponent,
    ThermalDecomposition, ThermalEdge,
};

use crate::error::check_cap;
use crate::{Error, Graph, Result, VertexSet};

pub const DEFAULT_MATCHING_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Builds a matching from edges of `g`, checking disjointness.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut used = vec![false; g.n()];
        let mut list = Vec::new();
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::EdgeNotFound(u, v));
            }
            if std::mem::replace(&mut used[u], true) || std::mem::replace(&mut used[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) shares a vertex with another matching edge"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Matching {
            n: g.n(),
            edges: list,
        })
    }

    fn from_mate(mate: &[Option<usize>]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
            .collect();
        Matching {
            n: mate.len(),
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn mate(&self) -> Vec<Option<usize>> {
        let mut mate = vec![None; self.n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn saturated(&self) -> VertexSet {
        VertexSet::from_members(self.n, self.edges.iter().flat_map(|&(u, v)| [u, v]))
    }
}

/// Greedy leaf matching on a forest: scanning vertices deepest first, match
/// each unmatched vertex with its unmatched parent.
fn forest_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let x = order[i];
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    order.push(y);
                }
            }
            i += 1;
        }
    }
    let mut mate = vec![None; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            if mate[v].is_none() && mate[p].is_none() {
                mate[v] = Some(p);
                mate[p] = Some(v);
            }
        }
    }
    Matching::from_mate(&mate)
}

/// Augmenting-path matching on a bipartite graph with the given sides.
fn bipartite_matching(g: &Graph, side: &[bool]) -> Matching {
    fn augment(g: &Graph, x: usize, visited: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &y in g.neighbors(x) {
            if visited[y] {
                continue;
            }
            visited[y] = true;
            if mate[y].is_none_or(|x2| augment(g, x2, visited, mate)) {
                mate[y] = Some(x);
                mate[x] = Some(y);
                return true;
            }
        }
        false
    }
    let n = g.n();
    let mut mate = vec![None; n];
    for x in (0..n).filter(|&x| !side[x]) {
        let mut visited = vec![false; n];
        augment(g, x, &mut visited, &mut mate);
    }
    Matching::from_mate(&mate)
}

/// Maximum matching of a tree, forest or bipartite graph.
pub fn max_matching(g: &Graph) -> Result<Matching> {
    if g.is_forest() {
        return Ok(forest_matching(g));
    }
    let side = g.two_coloring().ok_or_else(|| {
        Error::UnsupportedClass("maximum matching needs a tree or bipartite graph".into())
    })?;
    Ok(bipartite_matching(g, &side))
}

pub fn matching_number(g: &Graph) -> Result<usize> {
    max_matching(g).map(|m| m.len())
}

/// König cover from a maximum matching of a bipartite graph: with `Z` the
/// vertices reachable from free left vertices by alternating paths, the
/// cover is `(L ∖ Z) ∪ (R ∩ Z)`. Its size is checked against `|M|`.
pub fn konig_cover(g: &Graph, m: &Matching) -> Result<VertexSet> {
    let side = g.require_bipartite()?;
    let mate = m.mate();
    let n = g.n();
    let mut reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&x| !side[x] && mate[x].is_none()).collect();
    for &x in &stack {
        reached[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if mate[x] == Some(y) || reached[y] {
                continue;
            }
            reached[y] = true;
            if let Some(x2) = mate[y] {
                if !reached[x2] {
                    reached[x2] = true;
                    stack.push(x2);
                }
            }
        }
    }
    let cover = VertexSet::from_members(n, (0..n).filter(|&v| side[v] == reached[v]));
    let covers_all = g
        .edges()
        .iter()
        .all(|&(u, v)| cover.contains(u) || cover.contains(v));
    if !covers_all || cover.len() != m.len() {
        return Err(Error::Invariant(format!(
            "König certificate failed: cover of size {} for matching of size {}",
            cover.len(),
            m.len()
        )));
    }
    Ok(cover)
}

/// Every maximum matching, in lexicographic order of edge lists.
pub fn enumerate_max_matchings(g: &Graph, n_cap: usize) -> Result<Vec<Matching>> {
    check_cap(g.n(), n_cap, "enumeration is exponential")?;
    let nu = matching_number(g)?;
    let n = g.n();
    let mut out = BTreeSet::new();
    let mut mate = vec![None; n];
    let mut decided = vec![false; n];
    fn rec(
        g: &Graph,
        v: usize,
        budget: usize,
        decided: &mut [bool],
        mate: &mut [Option<usize>],
        out: &mut BTreeSet<Matching>,
    ) {
        let n = g.n();
        let Some(v) = (v..n).find(|&x| !decided[x]) else {
            out.insert(Matching::from_mate(mate));
            return;
        };
        decided[v] = true;
        for &w in g.neighbors(v) {
            if !decided[w] {
                decided[w] = true;
                mate[v] = Some(w);
                mate[w] = Some(v);
                rec(g, v + 1, budget, decided, mate, out);
                mate[v] = None;
                mate[w] = None;
                decided[w] = false;
            }
        }
        if budget > 0 {
            rec(g, v + 1, budget - 1, decided, mate, out);
        }
        decided[v] = false;
    }
    rec(g, 0, n - 2 * nu, &mut decided, &mut mate, &mut out);
    Ok(out.into_iter().collect())
}

/// Every minimum vertex cover of a tree or bipartite graph, as sorted
/// bitmask order. Minimality is certified by `|C| = ν`.
pub fn enumerate_min_covers(g: &Graph, n_cap: usize) -> Result<Vec<VertexSet>> {
    check_cap(g.n(), n_cap, "enumeration is exponential")?;
    let nu = matching_number(g)?;
    let mut out = BTreeSet::new();
    fn rec(edges: &[(usize, usize)], cover: u64, depth: usize, out: &mut BTreeSet<u64>) {
        let open = edges
            .iter()
            .find(|&&(u, v)| cover >> u & 1 == 0 && cover >> v & 1 == 0);
        match open {
            None => {
                out.insert(cover);
            }
            Some(&(u, v)) if depth > 0 => {
                rec(edges, cover | 1 << u, depth - 1, out);
                rec(edges, cover | 1 << v, depth - 1, out);
            }
            Some(_) => {}
        }
    }
    rec(g.edges(), 0, nu, &mut out);
    let covers: Vec<VertexSet> = out
        .into_iter()
        .filter(|c| c.count_ones() as usize == nu)
        .map(|c| VertexSet::from_mask(g.n(), c))
        .collect();
    Ok(covers)
}

/// Whether `m` has an alternating cycle: a directed cycle after orienting
/// unmatched edges left to right and matched edges right to left.
pub fn has_alternating_cycle(g: &Graph, m: &Matching) -> bool {
    let Some(side) = g.two_coloring() else {
        return false;
    };
    let n = g.n();
    let out: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            g.neighbors(x)
                .iter()
                .copied()
                .filter(|&y| m.contains(x, y) == side[x])
                .collect()
        })
        .collect();
    // 0 = new, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (x, ref mut i)) = stack.last_mut() {
            if let Some(&y) = out[x].get(*i) {
                *i += 1;
                match state[y] {
                    0 => {
                        state[y] = 1;
                        stack.push((y, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[x] = 2;
                stack.pop();
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite, cycle, path, star};

    #[test]
    fn maximum_matching_examples() {
        let p4 = max_matching(&path(4).unwrap()).unwrap();
        assert_eq!(p4.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(max_matching(&star(3).unwrap()).unwrap().len(), 1);
        let k23 = complete_bipartite(2, 3).unwrap();
        let m = max_matching(&k23).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(konig_cover(&k23, &m).unwrap().members(), vec![0, 1]);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(max_matching(&tri).unwrap_err().kind(), "unsupported_class");
    }

    #[test]
    fn enumeration_examples() {
        let p3 = path(3).unwrap();
        let ms = enumerate_max_matchings(&p3, 16).unwrap();
        assert_eq!(
            ms.iter().map(|m| m.edges().to_vec()).collect::<Vec<_>>(),
            vec![vec![(0, 1)], vec![(1, 2)]]
        );
        assert_eq!(
            enumerate_min_covers(&p3, 16).unwrap(),
            vec![VertexSet::from_members(3, [1])]
        );

        let p4 = path(4).unwrap();
        assert_eq!(enumerate_max_matchings(&p4, 16).unwrap().len(), 1);
        // Size-2 covers of P4, checked by hand: {0,2}, {1,2}, {1,3}.
        let covers: Vec<Vec<usize>> = enumerate_min_covers(&p4, 16)
            .unwrap()
            .iter()
            .map(|c| c.members())
            .collect();
        assert_eq!(covers, vec![vec![0, 2], vec![1, 2], vec![1, 3]]);

        let k13 = star(3).unwrap();
        assert_eq!(enumerate_max_matchings(&k13, 16).unwrap().len(), 3);
        assert_eq!(
            enumerate_min_covers(&k13, 16).unwrap(),
            vec![VertexSet::from_members(4, [0])]
        );
    }

    #[test]
    fn alternating_cycles() {
        let c4 = cycle(4).unwrap();
        let m = max_matching(&c4).unwrap();
        assert!(has_alternating_cycle(&c4, &m));
        let p4 = path(4).unwrap();
        assert!(!has_alternating_cycle(&p4, &max_matching(&p4).unwrap()));
    }

    #[test]
    fn matching_validation() {
        let p4 = path(4).unwrap();
        assert!(Matching::new(&p4, [(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(&p4, [(0, 2)]).is_err());
        assert_eq!(Matching::new(&p4, [(3, 2)]).unwrap().edges(), &[(2, 3)]);
    }
}
