//! Subsets of `[m] = {1, ..., m}` stored as bitmasks.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest universe an [`IndexSubset`] can describe.
pub const MAX_UNIVERSE: usize = 63;

/// A subset of `[universe]`. Element `k` is stored in bit `k - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset {
    universe: usize,
    bits: u64,
}

impl IndexSubset {
    pub fn empty(universe: usize) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::InvalidSubset(format!("universe {universe} exceeds {MAX_UNIVERSE}")));
        }
        Ok(IndexSubset { universe, bits: 0 })
    }

    /// `[universe]` itself.
    pub fn full(universe: usize) -> Result<Self> {
        let mut s = Self::empty(universe)?;
        s.bits = Self::mask(universe);
        Ok(s)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elements: I) -> Result<Self> {
        let mut s = Self::empty(universe)?;
        for e in elements {
            if e == 0 || e > universe {
                return Err(Error::IndexOutOfRange { index: e, max: universe });
            }
            s.bits |= 1 << (e - 1);
        }
        Ok(s)
    }

    pub fn from_bits(universe: usize, bits: u64) -> Result<Self> {
        let s = Self::empty(universe)?;
        if bits & !Self::mask(universe) != 0 {
            return Err(Error::InvalidSubset(format!("bits {bits:#b} outside [{universe}]")));
        }
        Ok(IndexSubset { bits, ..s })
    }

    fn mask(universe: usize) -> u64 {
        if universe == 0 {
            0
        } else {
            u64::MAX >> (64 - universe)
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && k <= self.universe && self.bits & (1 << (k - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.universe).filter(move |k| bits & (1 << (k - 1)) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn sum(&self) -> usize {
        let mut bits = self.bits;
        let mut total = 0;
        while bits != 0 {
            total += bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
        }
        total
    }

    /// Subset test on the members; universes may differ.
    pub fn is_subset(&self, other: &IndexSubset) -> bool {
        self.bits & !other.bits == 0
    }

    /// `[universe] \ self`.
    pub fn complement(&self) -> IndexSubset {
        IndexSubset { universe: self.universe, bits: !self.bits & Self::mask(self.universe) }
    }

    /// `{k - 1 : k in self, k >= 2}`.
    pub fn shift_down(&self) -> IndexSubset {
        IndexSubset { universe: self.universe, bits: self.bits >> 1 }
    }

    /// No two consecutive integers.
    pub fn is_lacunar(&self) -> bool {
        self.bits & (self.bits >> 1) == 0
    }

    /// Same members viewed inside a different universe.
    pub fn with_universe(&self, universe: usize) -> Result<IndexSubset> {
        Self::from_bits(universe, self.bits)
    }

    pub fn union(&self, other: &IndexSubset) -> IndexSubset {
        IndexSubset { universe: self.universe.max(other.universe), bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &IndexSubset) -> IndexSubset {
        IndexSubset { universe: self.universe.min(other.universe), bits: self.bits & other.bits }
    }

    /// Parses `"{2,3}"`, `"2,3"` or `"{}"`.
    pub fn parse(universe: usize, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Self::empty(universe);
        }
        let elements = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidSubset(text.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(universe, elements)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.universe)
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

/// Deserializes from a sorted array; the universe is taken as the largest member.
impl<'de> Deserialize<'de> for IndexSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        let universe = elements.iter().copied().max().unwrap_or(0);
        IndexSubset::from_elements(universe, elements).map_err(serde::de::Error::custom)
    }
}
