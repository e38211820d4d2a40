//! Closed-set families as candidate matroids.
//!
//! A family is stored as sorted bitmasks. Verification builds the closure
//! table `cl[X] = ∩ {F ∈ family : F ⊇ X}` over every subset and checks the
//! axioms against it exhaustively.

use serde::{Deserialize, Serialize};

use crate::error::check_cap;
use crate::forcing;
use crate::matching;
use crate::vertex_set::k_subsets;
use crate::{Error, Graph, Result, VertexSet};

pub const DEFAULT_MATROID_CAP: usize = 14;

/// Family size up to which Hasse edges are included in reports.
pub const HASSE_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Szf,
    Kernel,
    HyperStalled,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeCounterexample {
    pub x: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidReport {
    pub n: usize,
    pub family_size: usize,
    pub contains_universe: bool,
    pub is_intersection_closed: bool,
    pub intersection_counterexample: Option<[Vec<usize>; 2]>,
    pub extensive: bool,
    pub idempotent: bool,
    pub monotone: bool,
    pub is_closure_operator: bool,
    pub exchange_holds: bool,
    pub exchange_counterexample: Option<ExchangeCounterexample>,
    pub is_matroid: bool,
    pub rank: Option<usize>,
    pub bases: Vec<Vec<usize>>,
    pub hyperplanes: Vec<Vec<usize>>,
    /// Covering pairs `(i, j)` of family indices, present for small families.
    pub hasse_edges: Option<Vec<(usize, usize)>>,
}

/// Explicit family of vertex sets together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct ClosedSetFamily {
    n: usize,
    masks: Vec<u64>,
    provenance: Provenance,
    report: Option<MatroidReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub provenance: Provenance,
    pub family: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<MatroidReport>,
}

impl TryFrom<FamilyJson> for ClosedSetFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        check_cap(j.n, 63, "families are stored as 64-bit masks")?;
        let masks = j
            .family
            .iter()
            .map(|m| VertexSet::try_from_members(j.n, m.iter().copied()).map(|s| s.to_mask()))
            .collect::<Result<Vec<_>>>()?;
        let mut fam = ClosedSetFamily::from_masks(j.n, masks, j.provenance);
        fam.report = j.report;
        Ok(fam)
    }
}

impl From<ClosedSetFamily> for FamilyJson {
    fn from(f: ClosedSetFamily) -> Self {
        FamilyJson {
            n: f.n,
            provenance: f.provenance,
            family: f.members().map(|s| s.members()).collect(),
            report: f.report,
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

impl ClosedSetFamily {
    pub fn from_masks(n: usize, mut masks: Vec<u64>, provenance: Provenance) -> Self {
        assert!(n <= 63, "families are stored as 64-bit masks");
        masks.sort_unstable();
        masks.dedup();
        ClosedSetFamily {
            n,
            masks,
            provenance,
            report: None,
        }
    }

    pub fn from_sets<I: IntoIterator<Item = VertexSet>>(
        n: usize,
        sets: I,
        provenance: Provenance,
    ) -> Self {
        Self::from_masks(
            n,
            sets.into_iter().map(|s| s.to_mask()).collect(),
            provenance,
        )
    }

    /// Attaches a [`MatroidReport`].
    pub fn with_report(mut self, cap: usize) -> Result<Self> {
        self.report = Some(verify_matroid(&self, cap)?);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn report(&self) -> Option<&MatroidReport> {
        self.report.as_ref()
    }

    /// Members as bitmasks in increasing order.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.masks.iter().map(|&m| VertexSet::from_mask(self.n, m))
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        s.universe() == self.n && self.contains_mask(s.to_mask())
    }

    /// `cl[X]` for every `X`, by a superset sweep. Subsets contained in no
    /// member map to the full mask.
    pub fn closure_table(&self) -> Vec<u64> {
        let full = full_mask(self.n);
        let mut table = vec![full; 1usize << self.n];
        for &m in &self.masks {
            table[m as usize] = m;
        }
        for i in 0..self.n {
            let bit = 1usize << i;
            for x in 0..table.len() {
                if x & bit == 0 {
                    table[x] &= table[x | bit];
                }
            }
        }
        table
    }
}

/// Intersection of the members containing `S`.
pub fn closure_from_family(family: &ClosedSetFamily, s: &VertexSet) -> Result<VertexSet> {
    let n = family.n;
    if s.universe() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.universe(),
        });
    }
    let full = full_mask(n);
    if !family.contains_mask(full) {
        return Err(Error::InvalidParameter(
            "family does not contain the full vertex set".into(),
        ));
    }
    let target = s.to_mask();
    let mut running = full;
    for &m in family.masks.iter().filter(|&&m| m & target == target) {
        let next = running & m;
        if !family.contains_mask(next) {
            return Err(Error::NotIntersectionClosed {
                left: VertexSet::from_mask(n, running),
                right: VertexSet::from_mask(n, m),
            });
        }
        running = next;
    }
    Ok(VertexSet::from_mask(n, running))
}

/// Exhaustive axiom check of the family's closure operator.
///
/// Exchange is tested for closed `X` only; for a closure operator this is
/// equivalent to testing every `X`, since `cl(X ∪ b) = cl(cl(X) ∪ b)`.
pub fn verify_matroid(family: &ClosedSetFamily, cap: usize) -> Result<MatroidReport> {
    let n = family.n;
    check_cap(n, cap, "matroid verification enumerates every subset")?;
    let full = full_mask(n);
    let contains_universe = family.contains_mask(full);
    let table = family.closure_table();

    let mut extensive = true;
    let mut idempotent = true;
    let mut monotone = true;
    let mut intersection_counterexample = None;
    for x in 0..table.len() {
        let c = table[x];
        extensive &= c & x as u64 == x as u64;
        idempotent &= table[c as usize] == c;
        for i in 0..n {
            monotone &= c & !table[x | 1 << i] == 0;
        }
        if intersection_counterexample.is_none() && !family.contains_mask(c) && contains_universe {
            let s = VertexSet::from_mask(n, x as u64);
            if let Err(Error::NotIntersectionClosed { left, right }) =
                closure_from_family(family, &s)
            {
                intersection_counterexample = Some([left.members(), right.members()]);
            }
        }
    }
    let is_intersection_closed = contains_universe && intersection_counterexample.is_none();
    let is_closure_operator = is_intersection_closed && extensive && idempotent && monotone;

    let mut exchange_counterexample = None;
    if is_closure_operator {
        'outer: for &f in &family.masks {
            for a in (0..n).filter(|&a| f >> a & 1 == 0) {
                for b in (0..n).filter(|&b| b != a && f >> b & 1 == 0) {
                    let with_b = table[(f | 1 << b) as usize];
                    let with_a = table[(f | 1 << a) as usize];
                    if with_b >> a & 1 == 1 && with_a >> b & 1 == 0 {
                        exchange_counterexample = Some(ExchangeCounterexample { x: bits(f), a, b });
                        break 'outer;
                    }
                }
            }
        }
    }
    let exchange_holds = is_closure_operator && exchange_counterexample.is_none();
    let is_matroid = exchange_holds;

    let (rank, bases, hyperplanes) = if is_matroid {
        let (r, b, h) = rank_bases_from_table(n, &family.masks, &table);
        (Some(r), b, h)
    } else {
        (None, Vec::new(), Vec::new())
    };

    Ok(MatroidReport {
        n,
        family_size: family.len(),
        contains_universe,
        is_intersection_closed,
        intersection_counterexample,
        extensive,
        idempotent,
        monotone,
        is_closure_operator,
        exchange_holds,
        exchange_counterexample,
        is_matroid,
        rank,
        bases,
        hyperplanes,
        hasse_edges: (family.len() <= HASSE_LIMIT).then(|| hasse_edges(&family.masks)),
    })
}

type RankBasesHyperplanes = (usize, Vec<Vec<usize>>, Vec<Vec<usize>>);

fn rank_bases_from_table(n: usize, members: &[u64], table: &[u64]) -> RankBasesHyperplanes {
    let full = full_mask(n);
    let (rank, bases) = (0..=n)
        .find_map(|k| {
            let b: Vec<Vec<usize>> = k_subsets(n, k)
                .filter(|&x| table[x as usize] == full)
                .map(bits)
                .collect();
            (!b.is_empty()).then_some((k, b))
        })
        .expect("the full set spans");
    let hyperplanes = members
        .iter()
        .filter(|&&f| {
            f != full && (0..n).all(|v| f >> v & 1 == 1 || table[(f | 1 << v) as usize] == full)
        })
        .map(|&f| bits(f))
        .collect();
    (rank, bases, hyperplanes)
}

/// Rank, bases and hyperplanes of a verified matroid family.
pub fn rank_bases_hyperplanes(
    family: &ClosedSetFamily,
    cap: usize,
) -> Result<RankBasesHyperplanes> {
    let report = match family.report() {
        Some(r) => r.clone(),
        None => verify_matroid(family, cap)?,
    };
    if !report.is_matroid {
        let why = if let Some(c) = &report.exchange_counterexample {
            format!("exchange fails for X={:?}, a={}, b={}", c.x, c.a, c.b)
        } else if let Some([l, r]) = &report.intersection_counterexample {
            format!("{l:?} ∩ {r:?} is not in the family")
        } else {
            "family does not contain the full vertex set".into()
        };
        return Err(Error::NotMatroid(why));
    }
    Ok((report.rank.unwrap(), report.bases, report.hyperplanes))
}

/// Covering relations of the inclusion order on sorted masks.
pub fn hasse_edges(masks: &[u64]) -> Vec<(usize, usize)> {
    let below = |a: u64, b: u64| a != b && a & b == a;
    let mut edges = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            if below(a, b) && !masks[i + 1..j].iter().any(|&c| below(a, c) && below(c, b)) {
                edges.push((i, j));
            }
        }
    }
    edges
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub n: usize,
    pub extensive: bool,
    pub idempotent: bool,
    pub monotone: bool,
    pub exchange_holds: bool,
    pub exchange_counterexample: Option<ExchangeCounterexample>,
    pub is_matroid_closure: bool,
}

/// Checks a closure operator given pointwise on bitmasks, over every subset
/// and every exchange triple.
pub fn verify_closure_operator<F>(n: usize, cap: usize, op: F) -> Result<OperatorReport>
where
    F: Fn(u64) -> u64,
{
    check_cap(n, cap, "operator verification enumerates every subset")?;
    let table: Vec<u64> = (0..1u64 << n).map(&op).collect();
    let mut extensive = true;
    let mut idempotent = true;
    let mut monotone = true;
    let mut counterexample = None;
    for x in 0..table.len() {
        let c = table[x];
        extensive &= c & x as u64 == x as u64;
        idempotent &= table[c as usize] == c;
        for i in 0..n {
            monotone &= c & !table[x | 1 << i] == 0;
        }
        if counterexample.is_some() {
            continue;
        }
        'pairs: for a in (0..n).filter(|&a| c >> a & 1 == 0) {
            for b in (0..n).filter(|&b| b != a && c >> b & 1 == 0) {
                let with_b = table[x | 1 << b];
                let with_a = table[x | 1 << a];
                if with_b >> a & 1 == 1 && with_a >> b & 1 == 0 {
                    counterexample = Some(ExchangeCounterexample {
                        x: bits(x as u64),
                        a,
                        b,
                    });
                    break 'pairs;
                }
            }
        }
    }
    let exchange_holds = counterexample.is_none();
    Ok(OperatorReport {
        n,
        extensive,
        idempotent,
        monotone,
        exchange_holds,
        exchange_counterexample: counterexample,
        is_matroid_closure: extensive && idempotent && monotone && exchange_holds,
    })
}

/// A forcing set paired with a maximum matching, as edge list.
pub type ForcingMatchingPair = (Vec<usize>, Vec<(usize, usize)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammoidCertificate {
    pub agree: bool,
    /// Inclusion-minimal sets whose SZF closure is everything.
    pub minimal_forcing_sets: Vec<Vec<usize>>,
    /// `V ∖ saturated(M)` over maximum matchings `M`, deduplicated.
    pub matching_complements: Vec<Vec<usize>>,
    /// Pairs of a forcing set with one maximum matching leaving exactly it
    /// unsaturated.
    pub bijection: Vec<ForcingMatchingPair>,
    /// Smallest set present in one family but not the other.
    pub counterexample: Option<Vec<usize>>,
}

/// Compares minimal SZF forcing sets with complements of maximum-matching
/// saturated sets on a bipartite graph.
///
/// Fails with a hypothesis error if some maximum matching has an
/// alternating cycle.
pub fn gammoid_duality_check(g: &Graph, cap: usize) -> Result<GammoidCertificate> {
    g.require_bipartite()?;
    check_cap(g.n(), cap, "the duality check enumerates every subset")?;
    let matchings = matching::enumerate_max_matchings(g, cap)?;
    if let Some(m) = matchings
        .iter()
        .find(|m| matching::has_alternating_cycle(g, m))
    {
        return Err(Error::Hypothesis(format!(
            "maximum matching {:?} admits an alternating cycle",
            m.edges()
        )));
    }
    let n = g.n();
    let full = full_mask(n);
    let adj = g.adjacency_masks();
    let spans: Vec<bool> = (0..1u64 << n)
        .map(|x| forcing::szf_close_mask(&adj, x) == full)
        .collect();
    let minimal: Vec<u64> = (0..1u64 << n)
        .filter(|&x| {
            spans[x as usize] && (0..n).all(|i| x >> i & 1 == 0 || !spans[(x & !(1 << i)) as usize])
        })
        .collect();

    let mut by_complement: Vec<(u64, Vec<(usize, usize)>)> = matchings
        .iter()
        .map(|m| (full & !m.saturated().to_mask(), m.edges().to_vec()))
        .collect();
    by_complement.sort();
    by_complement.dedup_by_key(|(c, _)| *c);
    let complements: Vec<u64> = by_complement.iter().map(|(c, _)| *c).collect();

    let counterexample = minimal
        .iter()
        .chain(&complements)
        .filter(|m| minimal.binary_search(m).is_err() || complements.binary_search(m).is_err())
        .min()
        .map(|&m| bits(m));
    let agree = counterexample.is_none();
    Ok(GammoidCertificate {
        agree,
        minimal_forcing_sets: minimal.iter().map(|&m| bits(m)).collect(),
        matching_complements: complements.iter().map(|&m| bits(m)).collect(),
        bijection: if agree {
            by_complement
                .into_iter()
                .map(|(c, e)| (bits(c), e))
                .collect()
        } else {
            Vec::new()
        },
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, path, star};

    fn family(n: usize, sets: &[&[usize]]) -> ClosedSetFamily {
        ClosedSetFamily::from_sets(
            n,
            sets.iter()
                .map(|s| VertexSet::from_members(n, s.iter().copied())),
            Provenance::Custom,
        )
    }

    #[test]
    fn closure_from_small_families() {
        let c4 = family(4, &[&[], &[0, 2], &[1, 3], &[0, 1, 2, 3]]);
        let s = VertexSet::from_members(4, [1]);
        assert_eq!(closure_from_family(&c4, &s).unwrap().members(), vec![1, 3]);
        let c6 = family(6, &[&[], &[0, 2, 4], &[1, 3, 5], &[0, 1, 2, 3, 4, 5]]);
        let s = VertexSet::from_members(6, [0]);
        assert_eq!(
            closure_from_family(&c6, &s).unwrap().members(),
            vec![0, 2, 4]
        );
        assert!(closure_from_family(&c6, &VertexSet::full(6))
            .unwrap()
            .is_full());
    }

    #[test]
    fn non_intersection_closed_family_is_flagged() {
        let f = family(3, &[&[0, 1], &[1, 2], &[0, 1, 2]]);
        let err = closure_from_family(&f, &VertexSet::from_members(3, [1])).unwrap_err();
        assert_eq!(err.kind(), "not_intersection_closed");
        let r = verify_matroid(&f, 14).unwrap();
        assert!(!r.is_intersection_closed && !r.is_matroid);
        assert!(r.intersection_counterexample.is_some());
        assert!(rank_bases_hyperplanes(&f, 14).is_err());
    }

    #[test]
    fn exchange_failure_is_reported() {
        // Closure system of a chain ∅ ⊂ {0} ⊂ {0,1}: not a matroid.
        let f = family(2, &[&[], &[0], &[0, 1]]);
        let r = verify_matroid(&f, 14).unwrap();
        assert!(r.is_closure_operator);
        assert!(!r.exchange_holds);
        assert_eq!(
            r.exchange_counterexample,
            Some(ExchangeCounterexample {
                x: vec![],
                a: 0,
                b: 1
            })
        );
    }

    #[test]
    fn boolean_lattice_of_c6() {
        let c6 = family(6, &[&[], &[0, 2, 4], &[1, 3, 5], &[0, 1, 2, 3, 4, 5]]);
        let r = verify_matroid(&c6, 14).unwrap();
        assert!(r.is_matroid);
        assert_eq!(r.rank, Some(2));
        assert_eq!(r.hyperplanes, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(r.hasse_edges, Some(vec![(0, 1), (0, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn kernel_bases_of_c4_are_adjacent_pairs() {
        let c4 = family(4, &[&[], &[0, 2], &[1, 3], &[0, 1, 2, 3]]);
        let (rank, bases, _) = rank_bases_hyperplanes(&c4, 14).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(bases, vec![vec![0, 1], vec![1, 2], vec![0, 3], vec![2, 3]]);
    }

    #[test]
    fn family_json_round_trip() {
        let f = family(4, &[&[], &[0, 2], &[1, 3], &[0, 1, 2, 3]])
            .with_report(14)
            .unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: ClosedSetFamily = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn gammoid_examples() {
        let k13 = gammoid_duality_check(&star(3).unwrap(), 14).unwrap();
        assert!(k13.agree);
        assert_eq!(
            k13.minimal_forcing_sets,
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let p4 = gammoid_duality_check(&path(4).unwrap(), 14).unwrap();
        assert_eq!(p4.minimal_forcing_sets, vec![Vec::<usize>::new()]);
        assert!(p4.agree);
        let p3 = gammoid_duality_check(&path(3).unwrap(), 14).unwrap();
        assert_eq!(p3.minimal_forcing_sets, vec![vec![0], vec![2]]);
        assert!(p3.agree);
        let c4 = gammoid_duality_check(&cycle(4).unwrap(), 14).unwrap_err();
        assert_eq!(c4.kind(), "hypothesis_violation");
    }

    #[test]
    fn operator_check_detects_non_matroid() {
        // Closure adding vertex 1 whenever 0 is present, but not conversely.
        let r = verify_closure_operator(2, 14, |x| if x & 1 == 1 { x | 2 } else { x }).unwrap();
        assert!(r.extensive && r.idempotent && r.monotone);
        assert!(!r.exchange_holds);
    }
}
