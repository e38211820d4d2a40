//! Forcing engines: the skew zero forcing rule and ordinary zero forcing on
//! graphs, and the nondeterministic skew rule on hypergraphs.

mod hyper;
mod trace;

use std::collections::VecDeque;

use serde::Serialize;

pub use hyper::{
    hyper_derive, hyper_derived_masks, hyper_is_stalled, hyper_is_stalled_mask, hyper_rule_witness,
    hyper_stalled_family, hyper_szf_derived_sets, open_edges,
};
pub use trace::{ForcingStep, ForcingTrace};

use crate::error::check_cap;
use crate::matroid::{ClosedSetFamily, Provenance, DEFAULT_MATROID_CAP};
use crate::vertex_set::k_subsets;
use crate::{Graph, Result, VertexSet};

pub const DEFAULT_ENUM_CAP: usize = 20;
pub const DEFAULT_HYPER_CAP: usize = 16;

/// SZF closure with a trace of one valid rule order.
///
/// Keeps `count[x] = |N(x) ∖ S|` and a worklist of vertices whose count
/// is one, so each fill costs one pass over the neighbors of the filled
/// vertex.
pub fn szf_close(g: &Graph, s: &VertexSet) -> Result<(VertexSet, ForcingTrace)> {
    close_with(g, s, false)
}

/// Ordinary zero forcing: only filled vertices may force.
pub fn zf_close(g: &Graph, s: &VertexSet) -> Result<(VertexSet, ForcingTrace)> {
    close_with(g, s, true)
}

fn close_with(g: &Graph, s: &VertexSet, forcer_filled: bool) -> Result<(VertexSet, ForcingTrace)> {
    g.check_set(s)?;
    let n = g.n();
    let mut filled = s.clone();
    let mut count: Vec<usize> = (0..n)
        .map(|x| {
            g.neighbors(x)
                .iter()
                .filter(|&&w| !filled.contains(w))
                .count()
        })
        .collect();
    let eligible = |x: usize, filled: &VertexSet| !forcer_filled || filled.contains(x);
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&x| count[x] == 1 && eligible(x, &filled))
        .collect();
    let mut steps = Vec::new();
    while let Some(x) = queue.pop_front() {
        if count[x] != 1 || !eligible(x, &filled) {
            continue;
        }
        let y = *g
            .neighbors(x)
            .iter()
            .find(|&&w| !filled.contains(w))
            .expect("count tracks unfilled neighbors");
        filled.insert(y);
        steps.push(ForcingStep {
            forcer: x,
            forced: y,
        });
        for &z in g.neighbors(y) {
            count[z] -= 1;
            if count[z] == 1 {
                queue.push_back(z);
            }
        }
        if forcer_filled && count[y] == 1 {
            queue.push_back(y);
        }
    }
    let trace = ForcingTrace {
        initial: s.clone(),
        steps,
        final_set: filled.clone(),
    };
    Ok((filled, trace))
}

/// Least vertex with exactly one unfilled neighbor.
pub fn first_szf_rule_vertex(g: &Graph, s: &VertexSet) -> Option<usize> {
    (0..g.n()).find(|&x| g.neighbors(x).iter().filter(|&&w| !s.contains(w)).count() == 1)
}

pub fn is_szf_closed(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(first_szf_rule_vertex(g, s).is_none())
}

/// SZF closure on bitmasks, given neighborhood masks.
pub fn szf_close_mask(adj: &[u64], mut s: u64) -> u64 {
    loop {
        let before = s;
        for &nb in adj {
            let open = nb & !s;
            if open.count_ones() == 1 {
                s |= open;
            }
        }
        if s == before {
            return s;
        }
    }
}

pub fn zf_close_mask(adj: &[u64], mut s: u64) -> u64 {
    loop {
        let before = s;
        for (v, &nb) in adj.iter().enumerate() {
            let open = nb & !s;
            if s >> v & 1 == 1 && open.count_ones() == 1 {
                s |= open;
            }
        }
        if s == before {
            return s;
        }
    }
}

pub fn is_szf_closed_mask(adj: &[u64], s: u64) -> bool {
    adj.iter().all(|&nb| (nb & !s).count_ones() != 1)
}

/// All stalled sets. A matroid report is attached when `n` is within the
/// default verification cap.
pub fn enumerate_szf_closed(g: &Graph, n_cap: usize) -> Result<ClosedSetFamily> {
    check_cap(g.n(), n_cap, "use is_szf_closed for pointwise queries")?;
    let adj = g.adjacency_masks();
    let masks = (0..1u64 << g.n())
        .filter(|&s| is_szf_closed_mask(&adj, s))
        .collect();
    let family = ClosedSetFamily::from_masks(g.n(), masks, Provenance::Szf);
    if g.n() <= DEFAULT_MATROID_CAP {
        family.with_report(DEFAULT_MATROID_CAP)
    } else {
        Ok(family)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyResult {
    pub number: usize,
    pub chosen: VertexSet,
}

/// Repeatedly adds the least vertex outside the current closure.
///
/// The count is the SZF number whenever SZF closure is a matroid closure,
/// and an upper bound on it in general.
pub fn szf_number_greedy(g: &Graph) -> GreedyResult {
    let n = g.n();
    let mut chosen = VertexSet::empty(n);
    let (mut closure, _) = szf_close(g, &chosen).expect("sizes agree");
    while let Some(x) = closure.first_missing() {
        chosen.insert(x);
        closure = szf_close(g, &chosen).expect("sizes agree").0;
    }
    GreedyResult {
        number: chosen.len(),
        chosen,
    }
}

fn exact_number(
    g: &Graph,
    n_cap: usize,
    upper: usize,
    close: fn(&[u64], u64) -> u64,
) -> Result<usize> {
    check_cap(g.n(), n_cap, "use szf_number_greedy for an upper bound")?;
    let n = g.n();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let adj = g.adjacency_masks();
    for k in 0..upper {
        if k_subsets(n, k).any(|s| close(&adj, s) == full) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Minimum size of a set whose SZF closure is `V`, by search over sets of
/// increasing size below the greedy bound.
pub fn szf_number_exact(g: &Graph, n_cap: usize) -> Result<usize> {
    check_cap(g.n(), n_cap, "use szf_number_greedy for an upper bound")?;
    exact_number(g, n_cap, szf_number_greedy(g).number, szf_close_mask)
}

/// Minimum size of a zero forcing set.
pub fn zf_number_exact(g: &Graph, n_cap: usize) -> Result<usize> {
    exact_number(g, n_cap, g.n(), zf_close_mask)
}
