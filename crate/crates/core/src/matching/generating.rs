use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    dm_decomposition, enumerate_max_matchings, enumerate_min_covers, thermal_decomposition,
    EdgeClass,
};
use crate::forcing::szf_close;
use crate::linalg::{hat_closure, rank};
use crate::{Error, Graph, Result, VertexSet};

/// The six ways of computing the generating set of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratingRoute {
    /// SZF closure of the empty set.
    Szf,
    /// Common zeros of the kernel.
    Kernel,
    /// Perfect-matching components plus bc-tree covers.
    Thermal,
    /// Union of all minimum covers.
    CoverUnion,
    /// Vertices saturated by every maximum matching.
    MatchingIntersection,
    /// `U ∪ O` of the Dulmage-Mendelsohn decomposition.
    Dm,
}

impl GeneratingRoute {
    pub const ALL: [GeneratingRoute; 6] = [
        GeneratingRoute::Szf,
        GeneratingRoute::Kernel,
        GeneratingRoute::Thermal,
        GeneratingRoute::CoverUnion,
        GeneratingRoute::MatchingIntersection,
        GeneratingRoute::Dm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratingRoute::Szf => "szf",
            GeneratingRoute::Kernel => "kernel",
            GeneratingRoute::Thermal => "thermal",
            GeneratingRoute::CoverUnion => "cover_union",
            GeneratingRoute::MatchingIntersection => "matching_intersection",
            GeneratingRoute::Dm => "dm",
        }
    }

    /// Whether the route enumerates matchings or covers.
    pub fn is_enumerative(self) -> bool {
        matches!(
            self,
            GeneratingRoute::CoverUnion | GeneratingRoute::MatchingIntersection
        )
    }
}

impl fmt::Display for GeneratingRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratingRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratingRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown route {s:?}; expected one of szf, kernel, thermal, cover_union, matching_intersection, dm"
                ))
            })
    }
}

pub fn generating_set(t: &Graph, route: GeneratingRoute, n_cap: usize) -> Result<VertexSet> {
    t.require_tree()?;
    let n = t.n();
    Ok(match route {
        GeneratingRoute::Szf => szf_close(t, &VertexSet::empty(n))?.0,
        GeneratingRoute::Kernel => hat_closure(t, &VertexSet::empty(n))?,
        GeneratingRoute::Thermal => thermal_decomposition(t)?.generating_set(),
        GeneratingRoute::CoverUnion => enumerate_min_covers(t, n_cap)?
            .iter()
            .fold(VertexSet::empty(n), |acc, c| acc.union(c)),
        GeneratingRoute::MatchingIntersection => enumerate_max_matchings(t, n_cap)?
            .iter()
            .fold(VertexSet::full(n), |acc, m| {
                acc.intersection(&m.saturated())
            }),
        GeneratingRoute::Dm => {
            let d = dm_decomposition(t)?;
            d.unreachable.union(&d.odd)
        }
    })
}

/// Every route, in the order of [`GeneratingRoute::ALL`].
pub fn generating_sets_all(t: &Graph, n_cap: usize) -> Result<Vec<(GeneratingRoute, VertexSet)>> {
    GeneratingRoute::ALL
        .into_iter()
        .map(|r| Ok((r, generating_set(t, r, n_cap)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRankReport {
    pub rank: usize,
    pub rank_deleted: usize,
    pub rank_contracted: usize,
    pub class: EdgeClass,
}

/// Classifies an edge by exact adjacency ranks: `M` when deletion drops the
/// rank by two, `O` when contraction keeps it, `F` otherwise.
pub fn edge_rank_class(t: &Graph, u: usize, v: usize) -> Result<EdgeRankReport> {
    t.require_tree()?;
    let full = rank(t);
    let deleted = rank(&t.delete_edge(u, v)?);
    let contracted = rank(&t.contract_edge(u, v)?.0);
    let class = if deleted + 2 == full {
        EdgeClass::M
    } else if contracted == full {
        EdgeClass::O
    } else {
        EdgeClass::F
    };
    Ok(EdgeRankReport {
        rank: full,
        rank_deleted: deleted,
        rank_contracted: contracted,
        class,
    })
}
