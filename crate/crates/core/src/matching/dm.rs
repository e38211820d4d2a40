use std::collections::VecDeque;

use serde::Serialize;

use super::{max_matching, Matching};
use crate::{Error, Graph, Result, VertexSet};

/// Vertices by parity of alternating reachability from the free vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DmDecomposition {
    pub even: VertexSet,
    pub odd: VertexSet,
    pub unreachable: VertexSet,
    pub witness: Matching,
}

impl DmDecomposition {
    /// Whether two decompositions agree as vertex partitions.
    pub fn same_partition(&self, other: &DmDecomposition) -> bool {
        self.even == other.even && self.odd == other.odd && self.unreachable == other.unreachable
    }
}

pub fn dm_decomposition(g: &Graph) -> Result<DmDecomposition> {
    g.require_bipartite()?;
    let m = max_matching(g)?;
    dm_decomposition_with(g, &m)
}

/// Decomposition computed from a given maximum matching.
///
/// Free vertices are even. From an even vertex, unmatched edges lead to odd
/// vertices; from an odd vertex, its matched edge leads to an even vertex.
pub fn dm_decomposition_with(g: &Graph, m: &Matching) -> Result<DmDecomposition> {
    g.require_bipartite()?;
    if m.len() != super::matching_number(g)? {
        return Err(Error::InvalidParameter("matching is not maximum".into()));
    }
    let n = g.n();
    let mate = m.mate();
    // parity[v]: Some(false) even, Some(true) odd.
    let mut parity: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| mate[v].is_none()) {
        parity[v] = Some(false);
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if parity[v] == Some(false) {
            for &w in g.neighbors(v) {
                if mate[v] == Some(w) {
                    continue;
                }
                match parity[w] {
                    None => {
                        parity[w] = Some(true);
                        queue.push_back(w);
                    }
                    Some(false) => {
                        return Err(Error::Invariant(format!(
                            "vertices {v} and {w} are both even"
                        )))
                    }
                    Some(true) => {}
                }
            }
        } else {
            let w = mate[v].ok_or_else(|| Error::Invariant(format!("odd vertex {v} is free")))?;
            match parity[w] {
                None => {
                    parity[w] = Some(false);
                    queue.push_back(w);
                }
                Some(true) => {
                    return Err(Error::Invariant(format!(
                        "vertices {v} and {w} are both odd"
                    )))
                }
                Some(false) => {}
            }
        }
    }
    let pick = |p: Option<bool>| VertexSet::from_members(n, (0..n).filter(|&v| parity[v] == p));
    Ok(DmDecomposition {
        even: pick(Some(false)),
        odd: pick(Some(true)),
        unreachable: pick(None),
        witness: m.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite, cycle, path, random_tree, star};
    use crate::matching::enumerate_max_matchings;

    #[test]
    fn small_examples() {
        let d = dm_decomposition(&path(3).unwrap()).unwrap();
        assert_eq!(d.even.members(), vec![0, 2]);
        assert_eq!(d.odd.members(), vec![1]);
        assert!(d.unreachable.is_empty());

        let d = dm_decomposition(&path(4).unwrap()).unwrap();
        assert!(d.unreachable.is_full());

        let d = dm_decomposition(&star(3).unwrap()).unwrap();
        assert_eq!(d.even.members(), vec![1, 2, 3]);
        assert_eq!(d.odd.members(), vec![0]);
    }

    #[test]
    fn rejects_odd_cycles_and_non_maximum_matchings() {
        assert!(dm_decomposition(&cycle(5).unwrap()).is_err());
        let p4 = path(4).unwrap();
        let m = Matching::new(&p4, [(1, 2)]).unwrap();
        assert!(dm_decomposition_with(&p4, &m).is_err());
    }

    #[test]
    fn independent_of_matching() {
        let mut graphs = vec![complete_bipartite(2, 3).unwrap(), cycle(6).unwrap()];
        graphs.extend((0..15).map(|s| random_tree(10, s).unwrap()));
        for g in graphs {
            let base = dm_decomposition(&g).unwrap();
            for m in enumerate_max_matchings(&g, 16).unwrap() {
                assert!(dm_decomposition_with(&g, &m).unwrap().same_partition(&base));
            }
        }
    }
}
