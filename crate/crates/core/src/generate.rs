use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Graph, Hypergraph, Result};

/// Standard families. Parsed from strings such as `path:5`,
/// `complete_bipartite:2,3` or `complete_hypergraph:5,3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,n}` with center 0.
    Star(usize),
    RandomTree(usize),
    Complete(usize),
    CompleteHypergraph(usize, usize),
    /// `d` edges of size `k` sharing the center 0.
    Hyperstar(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Generated {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl GeneratorSpec {
    pub fn generate(&self, seed: u64) -> Result<Generated> {
        Ok(match *self {
            GeneratorSpec::Path(n) => Generated::Graph(path(n)?),
            GeneratorSpec::Cycle(n) => Generated::Graph(cycle(n)?),
            GeneratorSpec::CompleteBipartite(a, b) => Generated::Graph(complete_bipartite(a, b)?),
            GeneratorSpec::Star(n) => Generated::Graph(star(n)?),
            GeneratorSpec::RandomTree(n) => Generated::Graph(random_tree(n, seed)?),
            GeneratorSpec::Complete(n) => Generated::Graph(complete(n)?),
            GeneratorSpec::CompleteHypergraph(n, k) => {
                Generated::Hypergraph(complete_hypergraph(n, k)?)
            }
            GeneratorSpec::Hyperstar(d, k) => Generated::Hypergraph(hyperstar(d, k)?),
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            GeneratorSpec::Star(n) => write!(f, "star:{n}"),
            GeneratorSpec::RandomTree(n) => write!(f, "random_tree:{n}"),
            GeneratorSpec::Complete(n) => write!(f, "complete:{n}"),
            GeneratorSpec::CompleteHypergraph(n, k) => write!(f, "complete_hypergraph:{n},{k}"),
            GeneratorSpec::Hyperstar(d, k) => write!(f, "hyperstar:{d},{k}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("generator `{s}`: {msg}"));
        let (kind, args) = s.split_once(':').ok_or_else(|| bad("expected KIND:ARGS"))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("arguments must be non-negative integers"))?;
        let one = |nums: &[usize]| match nums {
            [a] => Ok(*a),
            _ => Err(bad("expected one argument")),
        };
        let two = |nums: &[usize]| match nums {
            [a, b] => Ok((*a, *b)),
            _ => Err(bad("expected two arguments")),
        };
        Ok(match kind.trim() {
            "path" => GeneratorSpec::Path(one(&nums)?),
            "cycle" => GeneratorSpec::Cycle(one(&nums)?),
            "star" => GeneratorSpec::Star(one(&nums)?),
            "random_tree" => GeneratorSpec::RandomTree(one(&nums)?),
            "complete" => GeneratorSpec::Complete(one(&nums)?),
            "complete_bipartite" => {
                let (a, b) = two(&nums)?;
                GeneratorSpec::CompleteBipartite(a, b)
            }
            "complete_hypergraph" => {
                let (n, k) = two(&nums)?;
                GeneratorSpec::CompleteHypergraph(n, k)
            }
            "hyperstar" => {
                let (d, k) = two(&nums)?;
                GeneratorSpec::Hyperstar(d, k)
            }
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        })
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

pub fn path(n: usize) -> Result<Graph> {
    positive("path length", n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "a cycle needs at least 3 vertices".into(),
        ));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    positive("side size", a)?;
    positive("side size", b)?;
    Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

pub fn star(leaves: usize) -> Result<Graph> {
    complete_bipartite(1, leaves)
}

pub fn complete(n: usize) -> Result<Graph> {
    positive("vertex count", n)?;
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Uniform random labeled tree on `n` vertices, decoded from a random
/// Prüfer sequence drawn with a seeded ChaCha8 generator.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    positive("vertex count", n)?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Graph::new(n, prufer_decode(n, &seq))
}

/// Linear-time Prüfer decoding.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

pub fn complete_hypergraph(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "complete hypergraph needs 2 <= k <= n, got n={n}, k={k}"
        )));
    }
    if n > 20 {
        return Err(Error::InvalidParameter(
            "complete hypergraph limited to n <= 20".into(),
        ));
    }
    let edges = crate::vertex_set::k_subsets(n, k)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>());
    Hypergraph::new(n, edges)
}

/// `d` edges of size `k` meeting only in the center 0.
pub fn hyperstar(d: usize, k: usize) -> Result<Hypergraph> {
    positive("edge count", d)?;
    if k < 2 {
        return Err(Error::InvalidParameter(
            "hyperstar edges need k >= 2".into(),
        ));
    }
    let n = 1 + d * (k - 1);
    let edges = (0..d).map(|i| {
        std::iter::once(0)
            .chain((0..k - 1).map(move |j| 1 + i * (k - 1) + j))
            .collect::<Vec<_>>()
    });
    Hypergraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_four_edges() {
        let c = cycle(4).unwrap();
        assert_eq!(c.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn complete_hypergraph_4_3() {
        let h = complete_hypergraph(4, 3).unwrap();
        assert_eq!(h.edges().len(), 4);
        assert!(h.edges().iter().all(|e| e.len() == 3));
        assert!(complete_hypergraph(3, 4).is_err());
    }

    #[test]
    fn random_tree_is_tree_and_reproducible() {
        let t = random_tree(30, 7).unwrap();
        assert_eq!(t.edge_count(), 29);
        assert!(t.is_tree());
        assert_eq!(t, random_tree(30, 7).unwrap());
    }

    #[test]
    fn prufer_known_sequence() {
        // Sequence (3,3,3) on 5 vertices is the star centered at 3.
        let mut edges: Vec<_> = prufer_decode(5, &[3, 3, 3])
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn prufer_is_bijective_for_small_n() {
        // Cayley: n^(n-2) distinct trees.
        let n: usize = 5;
        let mut trees = std::collections::BTreeSet::new();
        for code in 0..n.pow(3) {
            let seq = [code % n, code / n % n, code / (n * n)];
            trees.insert(Graph::new(n, prufer_decode(n, &seq)).unwrap());
        }
        assert_eq!(trees.len(), 125);
        assert!(trees.iter().all(Graph::is_tree));
    }

    #[test]
    fn spec_parsing_round_trip() {
        for text in [
            "path:4",
            "complete_bipartite:2,3",
            "hyperstar:4,3",
            "random_tree:12",
        ] {
            let spec: GeneratorSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("path".parse::<GeneratorSpec>().is_err());
        assert!("wheel:5".parse::<GeneratorSpec>().is_err());
        assert!("path:0"
            .parse::<GeneratorSpec>()
            .unwrap()
            .generate(0)
            .is_err());
    }

    #[test]
    fn hyperstar_shape() {
        let h = hyperstar(4, 3).unwrap();
        assert_eq!(h.n(), 9);
        assert_eq!(h.degree(0), 4);
        assert!(h.is_linear_hypertree());
    }
}
