use serde::{Deserialize, Serialize};

use super::matching_number;
use crate::{Error, Graph, Result, VertexSet};

/// Mandatory, optional or forbidden: in every, some, or no maximum matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    M,
    O,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThermalEdge {
    pub u: usize,
    pub v: usize,
    pub class: EdgeClass,
    /// Forbidden and incident to an optional edge.
    pub f_prime: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentClass {
    /// Every edge mandatory or forbidden; the component has a perfect
    /// matching.
    PerfectMatching,
    /// Every edge optional, or no edges.
    BcTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThermalComponent {
    pub vertices: Vec<usize>,
    pub class: ComponentClass,
    /// The unique minimum cover, for bc-tree components.
    pub cover: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThermalDecomposition {
    pub n: usize,
    pub matching_number: usize,
    pub edges: Vec<ThermalEdge>,
    /// Components of the tree with the `F′` edges removed.
    pub components: Vec<ThermalComponent>,
}

impl ThermalDecomposition {
    fn with_class(&self, class: EdgeClass) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| e.class == class)
            .map(|e| (e.u, e.v))
            .collect()
    }

    pub fn mandatory(&self) -> Vec<(usize, usize)> {
        self.with_class(EdgeClass::M)
    }

    pub fn optional(&self) -> Vec<(usize, usize)> {
        self.with_class(EdgeClass::O)
    }

    pub fn forbidden(&self) -> Vec<(usize, usize)> {
        self.with_class(EdgeClass::F)
    }

    pub fn f_prime(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| e.f_prime)
            .map(|e| (e.u, e.v))
            .collect()
    }

    pub fn class_of(&self, u: usize, v: usize) -> Option<EdgeClass> {
        let key = (u.min(v), u.max(v));
        self.edges
            .iter()
            .find(|e| (e.u, e.v) == key)
            .map(|e| e.class)
    }

    /// Vertices of perfect-matching components together with the covers of
    /// bc-tree components.
    pub fn generating_set(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for c in &self.components {
            let part = match c.class {
                ComponentClass::PerfectMatching => &c.vertices,
                ComponentClass::BcTree => {
                    c.cover.as_ref().expect("bc-tree components carry covers")
                }
            };
            for &v in part {
                s.insert(v);
            }
        }
        s
    }
}

/// Classifies each edge `e` of a tree by matching numbers: `M` if
/// `ν(T−e) = ν(T)−1`, otherwise `O` if `ν(T/e) = ν(T)`, otherwise `F`.
pub fn thermal_decomposition(t: &Graph) -> Result<ThermalDecomposition> {
    t.require_tree()?;
    let n = t.n();
    let nu = matching_number(t)?;
    let mut edges = Vec::with_capacity(t.edge_count());
    for &(u, v) in t.edges() {
        let class = if matching_number(&t.delete_edge(u, v)?)? + 1 == nu {
            EdgeClass::M
        } else if matching_number(&t.contract_edge(u, v)?.0)? == nu {
            EdgeClass::O
        } else {
            EdgeClass::F
        };
        edges.push(ThermalEdge {
            u,
            v,
            class,
            f_prime: false,
        });
    }

    let mut touches = vec![[false; 3]; n];
    for e in &edges {
        let k = e.class as usize;
        touches[e.u][k] = true;
        touches[e.v][k] = true;
    }
    let (m, o) = (EdgeClass::M as usize, EdgeClass::O as usize);
    if let Some(v) = (0..n).find(|&v| touches[v][m] && touches[v][o]) {
        return Err(Error::Invariant(format!(
            "vertex {v} meets both a mandatory and an optional edge"
        )));
    }
    for e in &mut edges {
        e.f_prime = e.class == EdgeClass::F && (touches[e.u][o] || touches[e.v][o]);
    }

    let kept = t
        .edges()
        .iter()
        .zip(&edges)
        .filter(|(_, e)| !e.f_prime)
        .map(|(&uv, _)| uv);
    let forest = Graph::new(n, kept)?;
    let mut components = Vec::new();
    for comp in forest.components() {
        let classes: Vec<EdgeClass> = edges
            .iter()
            .filter(|e| !e.f_prime && comp.binary_search(&e.u).is_ok())
            .map(|e| e.class)
            .collect();
        let all_optional = classes.iter().all(|&c| c == EdgeClass::O);
        let none_optional = classes.iter().all(|&c| c != EdgeClass::O);
        let set = VertexSet::from_members(n, comp.iter().copied());
        let (sub, old) = forest.induced(&set);
        let component = if all_optional {
            let cover = bc_tree_cover(&sub).map_err(|_| {
                Error::Invariant(format!("optional component {comp:?} is not a bc-tree"))
            })?;
            ThermalComponent {
                vertices: comp,
                class: ComponentClass::BcTree,
                cover: Some(cover.iter().map(|i| old[i]).collect()),
            }
        } else if none_optional {
            if 2 * matching_number(&sub)? != sub.n() {
                return Err(Error::Invariant(format!(
                    "component {comp:?} has no perfect matching"
                )));
            }
            ThermalComponent {
                vertices: comp,
                class: ComponentClass::PerfectMatching,
                cover: None,
            }
        } else {
            return Err(Error::Invariant(format!(
                "component {comp:?} mixes optional and non-optional edges"
            )));
        };
        components.push(component);
    }
    Ok(ThermalDecomposition {
        n,
        matching_number: nu,
        edges,
        components,
    })
}

/// Whether all pendant vertices of the tree are at even distance from each
/// other. The one-vertex tree counts.
pub fn is_bc_tree(t: &Graph) -> Result<bool> {
    t.require_tree()?;
    let pendants = t.pendants();
    let Some(&p) = pendants.first() else {
        return Ok(true);
    };
    let dist = t.distances_from(p);
    Ok(pendants.iter().all(|&q| dist[q].unwrap().is_multiple_of(2)))
}

/// The unique minimum cover of a bc-tree: vertices at odd distance from a
/// pendant vertex. Checked to be an independent cover of size `ν`.
pub fn bc_tree_cover(t: &Graph) -> Result<VertexSet> {
    if !is_bc_tree(t)? {
        return Err(Error::UnsupportedClass("tree is not a bc-tree".into()));
    }
    let n = t.n();
    let Some(&p) = t.pendants().first() else {
        return Ok(VertexSet::empty(n));
    };
    let dist = t.distances_from(p);
    let cover = VertexSet::from_members(n, (0..n).filter(|&v| dist[v].unwrap() % 2 == 1));
    let independent = t
        .edges()
        .iter()
        .all(|&(u, v)| !(cover.contains(u) && cover.contains(v)));
    let covering = t
        .edges()
        .iter()
        .all(|&(u, v)| cover.contains(u) || cover.contains(v));
    if !independent || !covering || cover.len() != matching_number(t)? {
        return Err(Error::Invariant(
            "bc-tree cover failed its certificate".into(),
        ));
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{path, star};

    #[test]
    fn p4_classes() {
        let d = thermal_decomposition(&path(4).unwrap()).unwrap();
        assert_eq!(d.mandatory(), vec![(0, 1), (2, 3)]);
        assert_eq!(d.forbidden(), vec![(1, 2)]);
        assert!(d.optional().is_empty() && d.f_prime().is_empty());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].class, ComponentClass::PerfectMatching);
        assert!(d.generating_set().is_full());
    }

    #[test]
    fn star_and_p5_all_optional() {
        let d = thermal_decomposition(&star(3).unwrap()).unwrap();
        assert_eq!(d.optional().len(), 3);
        assert_eq!(d.generating_set().members(), vec![0]);
        let d = thermal_decomposition(&path(5).unwrap()).unwrap();
        assert_eq!(d.optional().len(), 4);
        assert_eq!(d.generating_set().members(), vec![1, 3]);
    }

    #[test]
    fn p2_is_a_perfect_matching_component() {
        let d = thermal_decomposition(&path(2).unwrap()).unwrap();
        assert_eq!(d.mandatory(), vec![(0, 1)]);
        assert_eq!(d.components[0].class, ComponentClass::PerfectMatching);
        assert!(!is_bc_tree(&path(2).unwrap()).unwrap());
    }

    #[test]
    fn f_prime_edges_split_components() {
        // P3 on {0,1,2} joined at its center to the edge 3-4. By hand:
        // ν = 2, edge 3-4 is in every maximum matching, 1-3 in none, and
        // 0-1, 1-2 in some but not all.
        let t = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let d = thermal_decomposition(&t).unwrap();
        assert_eq!(d.mandatory(), vec![(3, 4)]);
        assert_eq!(d.optional(), vec![(0, 1), (1, 2)]);
        assert_eq!(d.f_prime(), vec![(1, 3)]);
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].cover, Some(vec![1]));
        assert_eq!(d.components[1].class, ComponentClass::PerfectMatching);
        assert_eq!(d.generating_set().members(), vec![1, 3, 4]);
    }

    #[test]
    fn bc_tree_examples() {
        assert!(is_bc_tree(&path(3).unwrap()).unwrap());
        assert_eq!(bc_tree_cover(&path(3).unwrap()).unwrap().members(), vec![1]);
        assert!(!is_bc_tree(&path(4).unwrap()).unwrap());
        assert!(bc_tree_cover(&path(4).unwrap()).is_err());
        assert!(is_bc_tree(&path(1).unwrap()).unwrap());
        // Spider with three legs of length two: center 0, legs 0-1-2, 0-3-4, 0-5-6.
        let spider = Graph::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(is_bc_tree(&spider).unwrap());
        assert_eq!(bc_tree_cover(&spider).unwrap().members(), vec![1, 3, 5]);
    }
}
