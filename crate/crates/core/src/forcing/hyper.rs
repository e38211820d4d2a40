use std::collections::HashSet;

use super::{ForcingStep, ForcingTrace};
use crate::error::check_cap;
use crate::matroid::{ClosedSetFamily, Provenance};
use crate::{Error, Hypergraph, Result, VertexSet};

/// Indices of the edges `e ∋ v` with no filled vertex in `e ∖ {v}`.
pub fn open_edges(h: &Hypergraph, filled: &VertexSet, v: usize) -> Vec<usize> {
    h.incident_edges(v)
        .iter()
        .copied()
        .filter(|&i| h.edges()[i].iter().all(|&w| w == v || !filled.contains(w)))
        .collect()
}

/// Least vertex at which the rule applies, with its unique open edge.
pub fn hyper_rule_witness(h: &Hypergraph, filled: &VertexSet) -> Option<(usize, usize)> {
    (0..h.n()).find_map(|v| match open_edges(h, filled, v).as_slice() {
        [e] => Some((v, *e)),
        _ => None,
    })
}

pub fn hyper_is_stalled(h: &Hypergraph, u: &VertexSet) -> Result<bool> {
    if u.universe() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: u.universe(),
        });
    }
    Ok(hyper_rule_witness(h, u).is_none())
}

struct MaskView {
    /// Per vertex, the masks of `e ∖ {v}` over incident edges.
    links: Vec<Vec<u64>>,
}

impl MaskView {
    fn new(h: &Hypergraph) -> Self {
        let masks = h.edge_masks();
        let links = (0..h.n())
            .map(|v| {
                h.incident_edges(v)
                    .iter()
                    .map(|&i| masks[i] & !(1u64 << v))
                    .collect()
            })
            .collect();
        MaskView { links }
    }

    /// The unique open link at `v`, if exactly one.
    fn single_open(&self, v: usize, s: u64) -> Option<u64> {
        let mut found = None;
        for &l in &self.links[v] {
            if l & s == 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(l);
            }
        }
        found
    }

    fn is_stalled(&self, s: u64) -> bool {
        (0..self.links.len()).all(|v| self.single_open(v, s).is_none())
    }
}

pub fn hyper_is_stalled_mask(h: &Hypergraph, s: u64) -> bool {
    MaskView::new(h).is_stalled(s)
}

/// Every derived set of `Z`, as sorted bitmasks.
///
/// Depth-first search over fill states; each state branches on every vertex
/// where the rule applies and every vertex of its open edge. States are
/// memoized, so each is expanded once.
pub fn hyper_derived_masks(h: &Hypergraph, z: u64, n_cap: usize) -> Result<Vec<u64>> {
    check_cap(
        h.n(),
        n_cap,
        "derived-set enumeration explores all fill states",
    )?;
    let view = MaskView::new(h);
    let mut seen = HashSet::from([z]);
    let mut stack = vec![z];
    let mut out = Vec::new();
    while let Some(s) = stack.pop() {
        let mut moved = false;
        for v in 0..h.n() {
            if let Some(link) = view.single_open(v, s) {
                moved = true;
                let mut rest = link;
                while rest != 0 {
                    let w = rest.trailing_zeros();
                    rest &= rest - 1;
                    let next = s | 1 << w;
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        if !moved {
            out.push(s);
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn hyper_szf_derived_sets(
    h: &Hypergraph,
    z: &VertexSet,
    n_cap: usize,
) -> Result<Vec<VertexSet>> {
    if z.universe() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: z.universe(),
        });
    }
    check_cap(
        h.n(),
        n_cap,
        "derived-set enumeration explores all fill states",
    )?;
    Ok(hyper_derived_masks(h, z.to_mask(), n_cap)?
        .into_iter()
        .map(|m| VertexSet::from_mask(h.n(), m))
        .collect())
}

/// One derived set, always applying the rule at the least vertex and filling
/// the least vertex of its open edge.
pub fn hyper_derive(h: &Hypergraph, z: &VertexSet) -> Result<(VertexSet, ForcingTrace)> {
    if z.universe() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: z.universe(),
        });
    }
    let mut filled = z.clone();
    let mut steps = Vec::new();
    while let Some((v, e)) = hyper_rule_witness(h, &filled) {
        let w = *h.edges()[e]
            .iter()
            .find(|&&w| w != v)
            .expect("edge has two vertices");
        filled.insert(w);
        steps.push(ForcingStep {
            forcer: v,
            forced: w,
        });
    }
    let trace = ForcingTrace {
        initial: z.clone(),
        steps,
        final_set: filled.clone(),
    };
    Ok((filled, trace))
}

/// Every stalled set of `H`.
pub fn hyper_stalled_family(h: &Hypergraph, n_cap: usize) -> Result<ClosedSetFamily> {
    check_cap(h.n(), n_cap, "use hyper_is_stalled for pointwise queries")?;
    let view = MaskView::new(h);
    let masks = (0..1u64 << h.n()).filter(|&s| view.is_stalled(s)).collect();
    Ok(ClosedSetFamily::from_masks(
        h.n(),
        masks,
        Provenance::HyperStalled,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::szf_close;
    use crate::generate::{complete_hypergraph, random_tree};

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn single_edge_derived_sets() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let from_u = hyper_szf_derived_sets(&h, &set(3, &[0]), 16).unwrap();
        assert_eq!(from_u, vec![set(3, &[0, 1]), set(3, &[0, 2])]);
        let from_empty = hyper_szf_derived_sets(&h, &set(3, &[]), 16).unwrap();
        assert_eq!(
            from_empty,
            vec![set(3, &[0, 1]), set(3, &[0, 2]), set(3, &[1, 2])]
        );
    }

    #[test]
    fn complete_hypergraph_not_stalled_at_size_two() {
        let k = complete_hypergraph(4, 3).unwrap();
        assert!(!hyper_is_stalled(&k, &set(4, &[0, 1])).unwrap());
        assert!(hyper_is_stalled(&k, &set(4, &[])).unwrap());
    }

    #[test]
    fn two_uniform_matches_graph_rule() {
        for seed in 0..20 {
            let g = random_tree(9, seed).unwrap();
            let h = Hypergraph::from(&g);
            for mask in [0u64, 1, 0b101, 0b1_0000_0010] {
                let z = VertexSet::from_mask(9, mask);
                let derived = hyper_szf_derived_sets(&h, &z, 16).unwrap();
                assert_eq!(derived, vec![szf_close(&g, &z).unwrap().0]);
                let (d, t) = hyper_derive(&h, &z).unwrap();
                assert_eq!(d, derived[0]);
                t.verify_hyper(&h).unwrap();
            }
        }
    }
}
