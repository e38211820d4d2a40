use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{primitive, RationalMatrix, RationalVector};
use crate::error::check_cap;
use crate::matroid::{ClosedSetFamily, Provenance};
use crate::{Error, Graph, Result, VertexSet};

/// Exact basis of `ker A(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullspaceBasis {
    pub n: usize,
    /// The nullity η.
    pub dimension: usize,
    pub basis: Vec<RationalVector>,
    pub fingerprint: String,
}

/// Short stable digest of a graph's vertex count and edge list.
pub fn fingerprint(g: &Graph) -> String {
    let mut h = DefaultHasher::new();
    g.n().hash(&mut h);
    g.edges().hash(&mut h);
    format!("n{}-m{}-{:016x}", g.n(), g.edge_count(), h.finish())
}

pub fn nullspace(g: &Graph) -> NullspaceBasis {
    let basis: Vec<RationalVector> = RationalMatrix::adjacency(g)
        .nullspace()
        .into_iter()
        .map(RationalVector)
        .collect();
    NullspaceBasis {
        n: g.n(),
        dimension: basis.len(),
        basis,
        fingerprint: fingerprint(g),
    }
}

pub fn rank(g: &Graph) -> usize {
    RationalMatrix::adjacency(g).rank()
}

pub fn nullity(g: &Graph) -> usize {
    g.n() - rank(g)
}

/// Adjacency matrix with the rows `e_s^T`, `s ∈ S`, appended. Its kernel is
/// the subspace of nullvectors vanishing on `S`.
fn constrained_matrix(g: &Graph, s: &VertexSet) -> RationalMatrix {
    let mut m = RationalMatrix::adjacency(g);
    for v in s.iter() {
        let mut row = vec![BigRational::zero(); g.n()];
        row[v] = BigRational::one();
        m.push_row(row);
    }
    m
}

/// Basis of the nullvectors that vanish on `S`.
pub fn vanishing_subspace(g: &Graph, s: &VertexSet) -> Result<Vec<RationalVector>> {
    g.check_set(s)?;
    Ok(constrained_matrix(g, s)
        .nullspace()
        .into_iter()
        .map(RationalVector)
        .collect())
}

fn common_zeros(n: usize, basis: &[RationalVector]) -> VertexSet {
    VertexSet::from_members(n, (0..n).filter(|&v| basis.iter().all(|b| b[v].is_zero())))
}

/// The smallest realizable set containing `S`: the common zero set of all
/// nullvectors vanishing on `S`.
pub fn hat_closure(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    let basis = vanishing_subspace(g, s)?;
    Ok(common_zeros(g.n(), &basis))
}

/// Same set as [`hat_closure`], computed by testing
/// `rank [A | E_S | e_v] = rank [A | E_S]` for every vertex `v`.
pub fn hat_closure_by_rank(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    let n = g.n();
    let mut base = RationalMatrix::adjacency(g);
    for v in s.iter() {
        base = base.hconcat(&unit_column(n, v))?;
    }
    let r = base.rank();
    let mut out = VertexSet::empty(n);
    for v in 0..n {
        if s.contains(v) || base.hconcat(&unit_column(n, v))?.rank() == r {
            out.insert(v);
        }
    }
    Ok(out)
}

fn unit_column(n: usize, v: usize) -> RationalMatrix {
    let mut c = RationalMatrix::zeros(n, 1);
    c.set(v, 0, BigRational::one());
    c
}

pub fn is_realizable(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(&hat_closure(g, s)? == s)
}

/// A nullvector whose zero locus is exactly `S`.
///
/// Basis vectors of the vanishing subspace are added one at a time with the
/// least positive integer scalar that cancels no existing nonzero
/// coordinate.
pub fn witness_nullvector(g: &Graph, s: &VertexSet) -> Result<RationalVector> {
    let basis = vanishing_subspace(g, s)?;
    let closure = common_zeros(g.n(), &basis);
    if &closure != s {
        return Err(Error::NotRealizable { closure });
    }
    let mut x = vec![BigRational::zero(); g.n()];
    for b in &basis {
        let excluded: HashSet<BigRational> = x
            .iter()
            .zip(b.iter())
            .filter(|(xv, bv)| !xv.is_zero() && !bv.is_zero())
            .map(|(xv, bv)| -xv / bv)
            .collect();
        let r = (1i64..)
            .map(|r| BigRational::from_integer(BigInt::from(r)))
            .find(|r| !excluded.contains(r))
            .unwrap();
        for (xv, bv) in x.iter_mut().zip(b.iter()) {
            *xv += &r * bv;
        }
    }
    let x = RationalVector(x);
    let ax = RationalMatrix::adjacency(g).mul_vec(&x)?;
    if !ax.iter().all(Zero::is_zero) || &x.zero_locus() != s {
        return Err(Error::Invariant(
            "witness nullvector failed verification".into(),
        ));
    }
    Ok(x)
}

/// Rank of `{e_v + im A : v ∈ S}` in the quotient `Q^n / im A`, computed as
/// `rank [A | E_S] − rank A`.
pub fn kernel_rank(g: &Graph, s: &VertexSet) -> Result<usize> {
    g.check_set(s)?;
    let a = RationalMatrix::adjacency(g);
    let mut es = RationalMatrix::zeros(g.n(), s.len());
    for (j, v) in s.iter().enumerate() {
        es.set(v, j, BigRational::one());
    }
    Ok(a.hconcat(&es)?.rank() - a.rank())
}

/// The kernel matroid as a column matroid.
///
/// Since `A` is symmetric, `im A` is the orthogonal complement of `ker A`,
/// so `e_v + im A` is represented by column `v` of a matrix whose rows form
/// a basis of `ker A`.
#[derive(Debug, Clone)]
pub struct KernelMatroid {
    n: usize,
    columns: Vec<Vec<BigRational>>,
}

/// Echelon basis kept in insertion order; each vector is zero at the pivots
/// of the vectors before it and one at its own pivot.
#[derive(Clone, Default)]
struct Span {
    vectors: Vec<(usize, Vec<BigRational>)>,
}

impl Span {
    fn residual(&self, c: &[BigRational]) -> Vec<BigRational> {
        let mut r = c.to_vec();
        for (p, b) in &self.vectors {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (ri, bi) in r.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *ri -= &f * bi;
                }
            }
        }
        r
    }

    fn push_residual(&mut self, r: Vec<BigRational>) {
        let p = r
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero residual");
        let lead = r[p].clone();
        self.vectors
            .push((p, r.into_iter().map(|x| x / &lead).collect()));
    }
}

impl KernelMatroid {
    pub fn new(g: &Graph) -> Self {
        let basis = RationalMatrix::adjacency(g).nullspace();
        let columns = (0..g.n())
            .map(|v| basis.iter().map(|b| b[v].clone()).collect())
            .collect();
        KernelMatroid { n: g.n(), columns }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matroid rank of the ground set, which is the nullity.
    pub fn full_rank(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    fn span_of(&self, s: &VertexSet) -> Span {
        let mut span = Span::default();
        for v in s.iter() {
            let r = span.residual(&self.columns[v]);
            if r.iter().any(|x| !x.is_zero()) {
                span.push_residual(r);
            }
        }
        span
    }

    pub fn rank_of(&self, s: &VertexSet) -> usize {
        self.span_of(s).vectors.len()
    }

    pub fn closure(&self, s: &VertexSet) -> VertexSet {
        let span = self.span_of(s);
        VertexSet::from_members(
            self.n,
            (0..self.n).filter(|&v| {
                s.contains(v) || span.residual(&self.columns[v]).iter().all(Zero::is_zero)
            }),
        )
    }

    /// All flats, as bitmasks in increasing order. Each flat `F` spawns the
    /// flats `F ∪ C` where `C` is a class of parallel residuals modulo
    /// `span F`.
    pub fn flats(&self) -> Vec<u64> {
        assert!(self.n <= 63, "flat enumeration needs n <= 63");
        let root = self.closure(&VertexSet::empty(self.n));
        let root_mask = root.to_mask();
        let mut seen = HashSet::from([root_mask]);
        let mut queue = VecDeque::from([(root_mask, self.span_of(&root))]);
        while let Some((mask, span)) = queue.pop_front() {
            let mut classes: HashMap<Vec<BigRational>, (u64, usize)> = HashMap::new();
            for v in (0..self.n).filter(|&v| mask >> v & 1 == 0) {
                let r = span.residual(&self.columns[v]);
                let key = primitive(&r);
                classes.entry(key).or_insert((0, v)).0 |= 1 << v;
            }
            for (_, (class, first)) in classes {
                let child = mask | class;
                if seen.insert(child) {
                    let mut next = span.clone();
                    next.push_residual(span.residual(&self.columns[first]));
                    queue.push_back((child, next));
                }
            }
        }
        let mut flats: Vec<u64> = seen.into_iter().collect();
        flats.sort_unstable();
        flats
    }
}

/// Every realizable set of `G`, with a matroid report.
pub fn kernel_matroid(g: &Graph, n_cap: usize) -> Result<ClosedSetFamily> {
    check_cap(
        g.n(),
        n_cap,
        "use hat_closure or is_realizable for pointwise queries",
    )?;
    let m = KernelMatroid::new(g);
    let family = ClosedSetFamily::from_masks(g.n(), m.flats(), Provenance::Kernel);
    family.with_report(n_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, path, star};

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn nullspace_examples() {
        let p3 = nullspace(&path(3).unwrap());
        assert_eq!(p3.dimension, 1);
        assert_eq!(p3.basis[0], RationalVector::from_integers([1, 0, -1]));
        assert_eq!(nullspace(&path(4).unwrap()).dimension, 0);
        let c4 = nullspace(&cycle(4).unwrap());
        assert_eq!(c4.dimension, 2);
        // The span is {(a, b, -a, -b)}.
        for b in &c4.basis {
            assert_eq!(b[0], -b[2].clone());
            assert_eq!(b[1], -b[3].clone());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&path(4).unwrap()), 4);
        assert_eq!(rank(&star(3).unwrap()), 2);
        assert_eq!(rank(&path(1).unwrap()), 0);
    }

    #[test]
    fn hat_examples() {
        let c4 = cycle(4).unwrap();
        assert!(hat_closure(&c4, &set(4, &[])).unwrap().is_empty());
        assert_eq!(hat_closure(&c4, &set(4, &[1])).unwrap(), set(4, &[1, 3]));
        assert!(is_realizable(&c4, &set(4, &[1, 3])).unwrap());
        assert!(!is_realizable(&c4, &set(4, &[1])).unwrap());
        let p4 = path(4).unwrap();
        assert!(hat_closure(&p4, &set(4, &[])).unwrap().is_full());
        let p3 = path(3).unwrap();
        assert!(hat_closure(&p3, &set(3, &[0])).unwrap().is_full());
    }

    #[test]
    fn witness_examples() {
        let p3 = path(3).unwrap();
        let x = witness_nullvector(&p3, &set(3, &[1])).unwrap();
        assert_eq!(x, RationalVector::from_integers([1, 0, -1]));
        let c4 = cycle(4).unwrap();
        let x = witness_nullvector(&c4, &set(4, &[])).unwrap();
        assert!(x.zero_locus().is_empty());
        let full = witness_nullvector(&c4, &VertexSet::full(4)).unwrap();
        assert_eq!(full, RationalVector::zeros(4));
        match witness_nullvector(&c4, &set(4, &[1])) {
            Err(Error::NotRealizable { closure }) => assert_eq!(closure, set(4, &[1, 3])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_route_and_column_route_agree_with_hat() {
        for g in [
            cycle(4).unwrap(),
            cycle(6).unwrap(),
            star(3).unwrap(),
            path(5).unwrap(),
        ] {
            let km = KernelMatroid::new(&g);
            for mask in 0..1u64 << g.n() {
                let s = VertexSet::from_mask(g.n(), mask);
                let h = hat_closure(&g, &s).unwrap();
                assert_eq!(hat_closure_by_rank(&g, &s).unwrap(), h);
                assert_eq!(km.closure(&s), h);
                assert_eq!(km.rank_of(&s), kernel_rank(&g, &s).unwrap());
            }
        }
    }

    #[test]
    fn kernel_matroid_examples() {
        let c4 = kernel_matroid(&cycle(4).unwrap(), 16).unwrap();
        let flats: Vec<Vec<usize>> = c4.members().map(|s| s.members()).collect();
        assert_eq!(
            flats,
            vec![vec![], vec![0, 2], vec![1, 3], vec![0, 1, 2, 3]]
        );
        assert_eq!(c4.report().unwrap().rank, Some(2));

        let p4 = kernel_matroid(&path(4).unwrap(), 16).unwrap();
        assert_eq!(p4.len(), 1);
        assert_eq!(p4.report().unwrap().rank, Some(0));

        let k13 = kernel_matroid(&star(3).unwrap(), 16).unwrap();
        assert_eq!(k13.masks()[0], 0b0001);
        assert_eq!(k13.report().unwrap().rank, Some(2));
        assert!(kernel_matroid(&path(17).unwrap(), 16).is_err());
    }
}
