//! Nullvectors of hypergraphs: common zeros of the link polynomials
//! `f_v(x) = Σ_{e ∋ v} Π_{w ∈ e∖{v}} x_w`.
//!
//! On linear hypertrees the stalled sets are exactly the zero loci of
//! nullvectors, and the minimal ones generate the irreducible components of
//! the nullvariety. On complete hypergraphs both families have closed forms.

use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::check_cap;
use crate::forcing::{hyper_derived_masks, hyper_is_stalled_mask, hyper_rule_witness};
use crate::linalg::RationalVector;
use crate::vertex_set::k_subsets;
use crate::{Error, Hypergraph, Result, VertexSet};

pub const DEFAULT_COVER_CAP: usize = 16;

/// Size limit for the brute-force checks in complete hypergraph reports.
pub const COMPLETE_VERIFY_LIMIT: usize = 7;

/// The link polynomial of `vertex`, as one monomial `e ∖ {vertex}` per
/// incident edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LinkPolynomial {
    pub vertex: usize,
    pub monomials: Vec<Vec<usize>>,
}

impl LinkPolynomial {
    pub fn of(h: &Hypergraph, v: usize) -> Self {
        let monomials = h
            .incident_edges(v)
            .iter()
            .map(|&i| h.edges()[i].iter().copied().filter(|&w| w != v).collect())
            .collect();
        LinkPolynomial {
            vertex: v,
            monomials,
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.monomials
            .iter()
            .map(|m| m.iter().fold(BigRational::one(), |acc, &w| acc * &x[w]))
            .sum()
    }

    /// The image after setting every variable in `u` to zero.
    pub fn restrict(&self, u: &VertexSet) -> Self {
        LinkPolynomial {
            vertex: self.vertex,
            monomials: self
                .monomials
                .iter()
                .filter(|m| m.iter().all(|&w| !u.contains(w)))
                .cloned()
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }
}

fn check_len(h: &Hypergraph, len: usize) -> Result<()> {
    if len != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: len,
        });
    }
    Ok(())
}

pub fn link_poly_eval(h: &Hypergraph, v: usize, x: &[BigRational]) -> Result<BigRational> {
    check_len(h, x.len())?;
    if v >= h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.n(),
        });
    }
    Ok(LinkPolynomial::of(h, v).eval(x))
}

/// Whether every link polynomial vanishes at `x`.
pub fn is_nullvector(h: &Hypergraph, x: &[BigRational]) -> Result<bool> {
    check_len(h, x.len())?;
    Ok((0..h.n()).all(|v| LinkPolynomial::of(h, v).eval(x).is_zero()))
}

/// For each edge, its least vertex where `x` vanishes.
///
/// On a linear hypertree every edge has one; a missing witness is an
/// invariant failure.
pub fn zero_locus_is_cover(t: &Hypergraph, x: &[BigRational]) -> Result<Vec<usize>> {
    t.require_linear_hypertree()?;
    if !is_nullvector(t, x)? {
        return Err(Error::Hypothesis("vector is not a nullvector".into()));
    }
    t.edges()
        .iter()
        .map(|e| {
            e.iter()
                .copied()
                .find(|&v| x[v].is_zero())
                .ok_or_else(|| Error::Invariant(format!("edge {e:?} has no zero coordinate")))
        })
        .collect()
}

/// Least pendant vertex lying in a leaf edge of the component `comp`.
fn root_of(t: &Hypergraph, comp: &[usize]) -> usize {
    comp.iter()
        .copied()
        .find(|&v| {
            t.degree(v) == 1 && {
                let e = &t.edges()[t.incident_edges(v)[0]];
                e.iter().filter(|&&w| t.degree(w) > 1).count() <= 1
            }
        })
        .expect("a hypertree component with edges has a leaf edge with a pendant vertex")
}

/// A nullvector whose zero locus is exactly the stalled set `s`.
///
/// Each component is swept breadth-first from a pendant vertex of a leaf
/// edge. Vertices of `s` get 0. At each vertex `v`, the edges with no vertex
/// of `s` other than `v` are active; stalledness makes their number `m`
/// differ from one. If the edge toward the root is active with product `c`,
/// each other active edge gets `-c/(m-1)` at its least unassigned vertex;
/// otherwise the first active edge gets all ones and the others `-1/(m-1)`.
/// Every remaining vertex gets 1.
pub fn construct_nullvector(t: &Hypergraph, s: &VertexSet) -> Result<RationalVector> {
    t.require_linear_hypertree()?;
    check_len(t, s.universe())?;
    if let Some((v, _)) = hyper_rule_witness(t, s) {
        return Err(Error::NotStalled { vertex: v });
    }
    let n = t.n();
    let one = BigRational::one();
    let mut x: Vec<Option<BigRational>> = (0..n)
        .map(|v| s.contains(v).then(BigRational::zero))
        .collect();
    let mut seen = vec![false; n];
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];

    for start in 0..n {
        if seen[start] {
            continue;
        }
        let comp = component(t, start);
        for &v in &comp {
            seen[v] = true;
        }
        if t.degree(start) == 0 {
            x[start].get_or_insert_with(|| one.clone());
            continue;
        }
        let root = root_of(t, &comp);
        x[root].get_or_insert_with(|| one.clone());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let active: Vec<usize> = t
                .incident_edges(v)
                .iter()
                .copied()
                .filter(|&i| t.edges()[i].iter().all(|&w| w == v || !s.contains(w)))
                .collect();
            if active.len() == 1 {
                return Err(Error::Invariant(format!(
                    "rule applies at {v} in a stalled set"
                )));
            }
            let m = BigRational::from_integer(active.len().saturating_sub(1).into());
            let up = parent_edge[v].filter(|e| active.contains(e));
            let (scale, ones_edge) = match up {
                Some(e) => {
                    let c = t.edges()[e]
                        .iter()
                        .filter(|&&w| w != v)
                        .fold(one.clone(), |acc, &w| {
                            acc * x[w].as_ref().expect("parent edge assigned")
                        });
                    (c, None)
                }
                None => (one.clone(), active.first().copied()),
            };
            for &e in t.incident_edges(v) {
                if Some(e) == parent_edge[v] {
                    continue;
                }
                let children: Vec<usize> =
                    t.edges()[e].iter().copied().filter(|&w| w != v).collect();
                for &w in &children {
                    parent_edge[w] = Some(e);
                    queue.push_back(w);
                }
                if active.contains(&e) && ones_edge != Some(e) {
                    x[children[0]] = Some(-&scale / &m);
                }
                for &w in &children {
                    x[w].get_or_insert_with(|| one.clone());
                }
            }
        }
    }

    let x = RationalVector(
        x.into_iter()
            .map(|q| q.expect("every vertex assigned"))
            .collect(),
    );
    if !is_nullvector(t, &x)? {
        return Err(Error::Invariant(
            "constructed vector is not a nullvector".into(),
        ));
    }
    if x.zero_locus() != *s {
        return Err(Error::Invariant(
            "constructed vector has the wrong zero locus".into(),
        ));
    }
    Ok(x)
}

fn component(t: &Hypergraph, start: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &i in t.incident_edges(v) {
            for &w in &t.edges()[i] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// A generating set of an irreducible component, with its codimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDescriptor {
    pub generating_set: VertexSet,
    /// `|U|` plus the number of distinct nonzero restricted link
    /// polynomials.
    pub codimension: usize,
    pub surviving_polynomials: Vec<LinkPolynomial>,
}

impl ComponentDescriptor {
    pub fn new(h: &Hypergraph, u: &VertexSet) -> Self {
        let mut distinct = BTreeSet::new();
        let surviving: Vec<LinkPolynomial> = (0..h.n())
            .map(|v| LinkPolynomial::of(h, v).restrict(u))
            .filter(|p| !p.is_zero())
            .filter(|p| distinct.insert(p.monomials.clone()))
            .collect();
        ComponentDescriptor {
            generating_set: u.clone(),
            codimension: u.len() + surviving.len(),
            surviving_polynomials: surviving,
        }
    }
}

fn require_rank_three(t: &Hypergraph) -> Result<()> {
    t.require_linear_hypertree()?;
    if t.min_rank().is_some_and(|r| r < 3) {
        return Err(Error::Hypothesis(
            "every edge must have at least three vertices".into(),
        ));
    }
    Ok(())
}

fn leaf_edges(t: &Hypergraph) -> impl Iterator<Item = &Vec<usize>> {
    t.edges()
        .iter()
        .filter(|e| e.iter().filter(|&&w| t.degree(w) > 1).count() <= 1)
}

/// Inclusion-minimal stalled sets among those derived from the empty set.
///
/// Each is checked to be a vertex cover meeting every leaf edge in at most
/// two vertices.
pub fn minimal_stalled_covers(t: &Hypergraph, n_cap: usize) -> Result<Vec<ComponentDescriptor>> {
    require_rank_three(t)?;
    let derived = hyper_derived_masks(t, 0, n_cap)?;
    let minimal: Vec<u64> = derived
        .iter()
        .copied()
        .filter(|&s| !derived.iter().any(|&d| d != s && d & s == d))
        .collect();
    let masks = t.edge_masks();
    minimal
        .into_iter()
        .map(|s| {
            if let Some(e) = masks.iter().find(|&&e| e & s == 0) {
                return Err(Error::Invariant(format!(
                    "minimal stalled set {:?} misses edge {:?}",
                    VertexSet::from_mask(t.n(), s),
                    VertexSet::from_mask(t.n(), *e)
                )));
            }
            if let Some(e) =
                leaf_edges(t).find(|e| e.iter().filter(|&&w| s >> w & 1 == 1).count() > 2)
            {
                return Err(Error::Invariant(format!(
                    "leaf edge {e:?} meets the set in more than two vertices"
                )));
            }
            Ok(ComponentDescriptor::new(t, &VertexSet::from_mask(t.n(), s)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub subsets_checked: usize,
    pub stalled: usize,
    /// Stalled sets realized by a constructed nullvector.
    pub realized: usize,
    /// Non-stalled sets refuted by a single surviving monomial.
    pub refuted: usize,
    /// Sets where the two sides disagree.
    pub disagreements: Vec<VertexSet>,
}

impl CorrespondenceReport {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Checks on every subset that stalled sets are zero loci of nullvectors and
/// non-stalled sets are not.
///
/// A stalled set counts as kernel-closed when [`construct_nullvector`]
/// succeeds. A set where the rule applies at `v` through edge `e` is not a
/// zero locus: the restricted link polynomial of `v` is the single monomial
/// of `e ∖ {v}`, nonzero at any vector with that zero locus.
pub fn stalled_iff_kernel_closed_check(
    t: &Hypergraph,
    n_cap: usize,
) -> Result<CorrespondenceReport> {
    require_rank_three(t)?;
    check_cap(t.n(), n_cap, "the check visits every subset")?;
    let n = t.n();
    let mut report = CorrespondenceReport {
        subsets_checked: 0,
        stalled: 0,
        realized: 0,
        refuted: 0,
        disagreements: Vec::new(),
    };
    for mask in 0..1u64 << n {
        let u = VertexSet::from_mask(n, mask);
        report.subsets_checked += 1;
        match hyper_rule_witness(t, &u) {
            None => {
                report.stalled += 1;
                match construct_nullvector(t, &u) {
                    Ok(_) => report.realized += 1,
                    Err(_) => report.disagreements.push(u),
                }
            }
            Some((v, _)) => {
                let image = LinkPolynomial::of(t, v).restrict(&u);
                if image.monomials.len() == 1 {
                    report.refuted += 1;
                } else {
                    report.disagreements.push(u);
                }
            }
        }
    }
    Ok(report)
}

/// Elementary symmetric polynomial `e_k` evaluated at `x`.
pub fn elementary_symmetric(x: &[BigRational], k: usize) -> BigRational {
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for xi in x {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * xi;
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteVerification {
    /// Stalled sets found by brute force match the size rule.
    pub stalled_rule_holds: bool,
    /// Every set of size at least `n-k+2` is the zero locus of the vector
    /// that is 1 off the set.
    pub kernel_witnesses_hold: bool,
    /// Every set of size `n-k+1` is refuted by a single surviving monomial.
    pub boundary_refuted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteHypergraphReport {
    pub n: usize,
    pub k: usize,
    /// Number of irreducible components, one per `(n-k+2)`-subset.
    pub components: u64,
    pub component_size: usize,
    /// Minimum size of a kernel-closed set; a set is kernel-closed iff its
    /// size is at least this.
    pub kernel_closed_min_size: usize,
    /// Sizes at which sets are not stalled.
    pub stalled_excluded_sizes: Vec<usize>,
    /// Brute-force checks, present when `n` is small.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<CompleteVerification>,
}

pub fn complete_kernel_closed(n: usize, k: usize, s: &VertexSet) -> bool {
    s.len() + k >= n + 2
}

pub fn complete_stalled(n: usize, k: usize, u: &VertexSet) -> bool {
    u.len() + k != n && u.len() + k != n + 1
}

pub fn complete_hypergraph_report(n: usize, k: usize) -> Result<CompleteHypergraphReport> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= n, got n={n}, k={k}"
        )));
    }
    let size = n - k + 2;
    let verification = (n <= COMPLETE_VERIFY_LIMIT)
        .then(|| verify_complete(n, k))
        .transpose()?;
    Ok(CompleteHypergraphReport {
        n,
        k,
        components: binomial(n, size),
        component_size: size,
        kernel_closed_min_size: size,
        stalled_excluded_sizes: vec![n - k, n - k + 1],
        verification,
    })
}

/// The generating sets of the irreducible components of `K_n^(k)`.
pub fn complete_components(n: usize, k: usize) -> Result<Vec<VertexSet>> {
    if k < 2 || k > n || n > 63 {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= n <= 63, got n={n}, k={k}"
        )));
    }
    Ok(k_subsets(n, n - k + 2)
        .map(|m| VertexSet::from_mask(n, m))
        .collect())
}

fn verify_complete(n: usize, k: usize) -> Result<CompleteVerification> {
    let h = crate::generate::complete_hypergraph(n, k)?;
    let mut stalled_rule_holds = true;
    let mut kernel_witnesses_hold = true;
    let mut boundary_refuted = true;
    for mask in 0..1u64 << n {
        let u = VertexSet::from_mask(n, mask);
        if hyper_is_stalled_mask(&h, mask) != complete_stalled(n, k, &u) {
            stalled_rule_holds = false;
        }
        if complete_kernel_closed(n, k, &u) {
            let x: Vec<BigRational> = (0..n)
                .map(|v| {
                    if u.contains(v) {
                        BigRational::zero()
                    } else {
                        BigRational::one()
                    }
                })
                .collect();
            kernel_witnesses_hold &= is_nullvector(&h, &x)?;
        } else if u.len() + k == n + 1 {
            let v = u.iter().next().expect("boundary sets are nonempty");
            boundary_refuted &= LinkPolynomial::of(&h, v).restrict(&u).monomials.len() == 1;
        }
    }
    Ok(CompleteVerification {
        stalled_rule_holds,
        kernel_witnesses_hold,
        boundary_refuted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::hyper_stalled_family;
    use crate::generate::{complete_hypergraph, hyperstar};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&a| q(a)).collect()
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn evaluation_examples() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert!(is_nullvector(&h, &ints(&[1, 0, 0])).unwrap());
        assert!(!is_nullvector(&h, &ints(&[1, 1, 0])).unwrap());
        assert_eq!(link_poly_eval(&h, 2, &ints(&[1, 1, 0])).unwrap(), q(1));
        assert!(is_nullvector(&h, &ints(&[0, 0, 0])).unwrap());
        assert!(is_nullvector(&h, &ints(&[0, 0])).is_err());
    }

    #[test]
    fn cover_witnesses() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(zero_locus_is_cover(&h, &ints(&[1, 0, 0])).unwrap(), vec![1]);
        let star = hyperstar(2, 3).unwrap();
        let x = ints(&[0, 1, 1, 1, -1]);
        assert!(is_nullvector(&star, &x).unwrap());
        assert_eq!(zero_locus_is_cover(&star, &x).unwrap(), vec![0, 0]);
        assert!(zero_locus_is_cover(&star, &ints(&[1, 1, 1, 1, 1])).is_err());
    }

    #[test]
    fn construct_on_two_edge_star() {
        let star = hyperstar(2, 3).unwrap();
        let x = construct_nullvector(&star, &set(5, &[0])).unwrap();
        assert_eq!(x.zero_locus(), set(5, &[0]));
        let x = construct_nullvector(&star, &set(5, &[1, 2, 3, 4])).unwrap();
        assert_eq!(x.zero_locus(), set(5, &[1, 2, 3, 4]));
        assert!(construct_nullvector(&star, &VertexSet::full(5))
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        assert!(matches!(
            construct_nullvector(&star, &set(5, &[1])),
            Err(Error::NotStalled { .. })
        ));
    }

    #[test]
    fn construct_on_every_stalled_set_of_the_hyperstar() {
        let h = hyperstar(4, 3).unwrap();
        for u in hyper_stalled_family(&h, 16).unwrap().members() {
            construct_nullvector(&h, &u).unwrap();
        }
    }

    #[test]
    fn minimal_covers() {
        let edge = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let c = minimal_stalled_covers(&edge, 16).unwrap();
        let sets: Vec<Vec<usize>> = c.iter().map(|d| d.generating_set.members()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(c.iter().all(|d| d.codimension == 2));

        let star = hyperstar(2, 3).unwrap();
        let c = minimal_stalled_covers(&star, 16).unwrap();
        let sets: Vec<(Vec<usize>, usize)> = c
            .iter()
            .map(|d| (d.generating_set.members(), d.codimension))
            .collect();
        assert_eq!(sets, vec![(vec![0], 2), (vec![1, 2, 3, 4], 4)]);
        assert_eq!(
            c[0].surviving_polynomials[0].monomials,
            vec![vec![1, 2], vec![3, 4]]
        );

        let graph_edge = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert!(matches!(
            minimal_stalled_covers(&graph_edge, 16),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn hyperstar_filled_set_is_not_returned() {
        // Center plus two vertices of each of the first three edges: the
        // center's restricted link polynomial is the single monomial of the
        // fourth edge.
        let h = hyperstar(4, 3).unwrap();
        let u = set(9, &[0, 1, 2, 3, 4, 5, 6]);
        assert!(!hyper_is_stalled_mask(&h, u.to_mask()));
        assert_eq!(
            LinkPolynomial::of(&h, 0).restrict(&u).monomials,
            vec![vec![7, 8]]
        );
        let c = minimal_stalled_covers(&h, 16).unwrap();
        assert!(c.iter().all(|d| d.generating_set != u));
    }

    #[test]
    fn correspondence_on_small_hypertrees() {
        for (h, subsets) in [
            (Hypergraph::new(3, [[0, 1, 2]]).unwrap(), 8),
            (hyperstar(2, 3).unwrap(), 32),
            (hyperstar(4, 3).unwrap(), 512),
        ] {
            let r = stalled_iff_kernel_closed_check(&h, 16).unwrap();
            assert_eq!(r.subsets_checked, subsets);
            assert!(r.agree());
            assert_eq!(r.realized + r.refuted, subsets);
        }
    }

    #[test]
    fn complete_reports() {
        let r = complete_hypergraph_report(4, 3).unwrap();
        assert_eq!(r.components, 4);
        assert_eq!(r.stalled_excluded_sizes, vec![1, 2]);
        let v = r.verification.unwrap();
        assert!(v.stalled_rule_holds && v.kernel_witnesses_hold && v.boundary_refuted);
        let h = complete_hypergraph(4, 3).unwrap();
        assert!(is_nullvector(&h, &ints(&[5, 0, 0, 0])).unwrap());

        let r = complete_hypergraph_report(3, 3).unwrap();
        assert_eq!(r.components, 3);
        assert_eq!(r.stalled_excluded_sizes, vec![0, 1]);

        let r = complete_hypergraph_report(5, 2).unwrap();
        assert_eq!((r.components, r.component_size), (1, 5));
        assert!(complete_hypergraph_report(3, 4).is_err());
        assert_eq!(complete_components(4, 3).unwrap().len(), 4);
    }

    #[test]
    fn elementary_symmetric_values() {
        let x = ints(&[1, 2, 3]);
        assert_eq!(elementary_symmetric(&x, 0), q(1));
        assert_eq!(elementary_symmetric(&x, 1), q(6));
        assert_eq!(elementary_symmetric(&x, 2), q(11));
        assert_eq!(elementary_symmetric(&x, 3), q(6));
        assert_eq!(elementary_symmetric(&x, 4), q(0));
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(20, 10), 184_756);
    }
}
