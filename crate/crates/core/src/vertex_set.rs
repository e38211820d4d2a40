use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A subset of the vertices `0..n` of some graph or hypergraph.
///
/// Used for fill states, covers, zero loci and generating sets. Sets are
/// ordered by their value as a binary number (vertex `i` is bit `i`), which
/// is also the order in which exhaustive enumerations visit them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Builds a set from members; panics if a member is `>= n`.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in members {
            assert!(v < n, "vertex {v} out of range for universe of size {n}");
            bits.insert(v);
        }
        VertexSet { bits }
    }

    /// Like [`VertexSet::from_members`] but reports out-of-range members.
    pub fn try_from_members<I: IntoIterator<Item = usize>>(
        n: usize,
        members: I,
    ) -> crate::Result<Self> {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in members {
            if v >= n {
                return Err(crate::Error::VertexOutOfRange { vertex: v, n });
            }
            bits.insert(v);
        }
        Ok(VertexSet { bits })
    }

    /// Set whose members are the one-bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask conversion needs n <= 64");
        debug_assert!(n == 64 || mask >> n == 0, "mask has bits beyond n");
        let bits = FixedBitSet::with_capacity_and_blocks(n, [mask as usize]);
        VertexSet { bits }
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.universe() <= 64, "mask conversion needs n <= 64");
        self.bits.as_slice().first().copied().unwrap_or(0) as u64
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn members(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    /// Least vertex outside the set.
    pub fn first_missing(&self) -> Option<usize> {
        self.bits.zeroes().next()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe().cmp(&other.universe()).then_with(|| {
            let a = self.bits.as_slice();
            let b = other.bits.as_slice();
            a.iter().rev().cmp(b.iter().rev())
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Iterates over all `k`-subsets of `0..n` as bitmasks in increasing order.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut next = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= limit && nxt.count_ones() as usize == k).then_some(nxt)
            }
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        let s = VertexSet::from_members(10, [0, 3, 9]);
        assert_eq!(s.to_mask(), 0b10_0000_1001);
        assert_eq!(VertexSet::from_mask(10, s.to_mask()), s);
        assert_eq!(s.complement().len(), 7);
        assert_eq!(s.first_missing(), Some(1));
        assert_eq!(VertexSet::full(4).first_missing(), None);
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..=10usize {
            for k in 0..=n + 1 {
                let subsets: Vec<u64> = k_subsets(n, k).collect();
                let expected = if k > n {
                    0
                } else {
                    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
                };
                assert_eq!(subsets.len() as u64, expected, "n={n} k={k}");
                assert!(subsets.windows(2).all(|w| w[0] < w[1]));
                assert!(subsets
                    .iter()
                    .all(|m| m.count_ones() as usize == k && m >> n == 0));
            }
        }
    }

    #[test]
    fn ordering_follows_mask_value() {
        let a = VertexSet::from_members(70, [65]);
        let b = VertexSet::from_members(70, [0, 1, 2]);
        assert!(b < a);
        assert!(VertexSet::from_mask(5, 3) < VertexSet::from_mask(5, 4));
    }

    #[test]
    fn serializes_as_member_list() {
        let s = VertexSet::from_members(5, [4, 1]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,4]");
    }
}
