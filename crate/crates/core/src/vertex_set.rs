use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of the vertex universe `[0, n)`.
///
/// Used for candidate input sets, chain states and black/white sets of the
/// forcing process. Equality, ordering and hashing are those of the underlying
/// bit pattern, so two sets over the same universe compare as sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from vertex ids, rejecting any id `>= n`.
    pub fn from_indices<I>(n: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(n);
        for index in indices {
            if index >= n {
                return Err(Error::Dimension { index, n });
            }
            set.bits.insert(index);
        }
        Ok(set)
    }

    /// Interprets the low `n` bits of `mask` as membership flags.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask universe limited to 64 vertices");
        let mut set = Self::empty(n);
        for v in 0..n {
            if mask >> v & 1 == 1 {
                set.bits.insert(v);
            }
        }
        set
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.universe() <= 64, "mask universe limited to 64 vertices");
        self.iter().fold(0u64, |m, v| m | 1 << v)
    }

    /// Size of the universe, not of the set.
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

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let was = self.bits.contains(v);
        self.bits.set(v, false);
        was
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Non-members in ascending order.
    pub fn iter_complement(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.zeroes()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// The `k`-th smallest member.
    pub fn nth_member(&self, k: usize) -> Option<usize> {
        self.iter().nth(k)
    }

    /// The `k`-th smallest non-member.
    pub fn nth_non_member(&self, k: usize) -> Option<usize> {
        self.iter_complement().nth(k)
    }

    /// Image of the set under `perm`, where vertex `v` maps to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut out = Self::empty(self.universe());
        for v in self.iter() {
            out.bits.insert(perm[v]);
        }
        out
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Parses a comma-separated list of 0-based ids such as `"0,5"`.
    /// An empty or all-blank string yields the empty set.
    pub fn parse_list(n: usize, text: &str) -> Result<Self> {
        let mut ids = Vec::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let id = token.parse::<usize>().map_err(|e| Error::Parse {
                line: 1,
                message: format!("bad vertex id {token:?}: {e}"),
            })?;
            ids.push(id);
        }
        Self::from_indices(n, ids)
    }

    /// Human-readable rendering with 1-based labels, e.g. `{x1, x6}`.
    pub fn labels(&self) -> String {
        let inner: Vec<String> = self.iter().map(|v| format!("x{}", v + 1)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels())
    }
}

// Serialised as a sorted array of 0-based ids; the universe travels separately.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Deserialises a bare id list; the universe is `max id + 1`.
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        let n = ids.iter().max().map_or(0, |m| m + 1);
        Ok(Self::from_indices(n, ids).expect("ids bounded by construction"))
    }
}
