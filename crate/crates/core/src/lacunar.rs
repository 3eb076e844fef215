//! Lacunar subsets of `[n-1]` and the statistics attached to them.
//!
//! A set is lacunar when it contains no two consecutive integers. The lacunar
//! subsets of `[n-1]` are listed as `Q_1, ..., Q_{f_{n+1}}` with weakly
//! increasing sums; equal sums are ordered by descending bitmask, which puts
//! `{4}` before `{1,3}` and `{5}` before `{1,4}`. Catalog positions are
//! 1-based throughout the public API.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::subset::{IndexSubset, MAX_UNIVERSE};

/// `f_m` with `f_0 = 0`, `f_1 = 1`.
pub fn fibonacci(m: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// The ordered list `Q_1, ..., Q_{f_{n+1}}` of lacunar subsets of `[n-1]`.
#[derive(Debug, Clone)]
pub struct LacunarCatalog {
    n: usize,
    sets: Vec<IndexSubset>,
}

/// `(sum, bits descending)` packed so that plain integer order is catalog order.
fn catalog_key(bits: u64) -> u128 {
    let sum = IndexSubset::from_bits(63, bits).map(|s| s.sum()).unwrap_or(0) as u128;
    (sum << 64) | u128::from(!bits)
}

impl LacunarCatalog {
    /// Enumerates and sorts the lacunar subsets of `[n-1]`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        if n - 1 > MAX_UNIVERSE {
            return Err(Error::InvalidSubset(format!("n = {n} exceeds the bitmask width")));
        }
        let mut bits = Vec::new();
        collect_lacunar(n - 1, 1, 0, &mut bits);
        let mut keys: Vec<u128> = bits.into_iter().map(catalog_key).collect();
        keys.sort_unstable();
        let sets = keys
            .into_iter()
            .map(|k| IndexSubset::from_bits(n - 1, !(k as u64)).expect("within universe"))
            .collect();
        Ok(LacunarCatalog { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of sets, `f_{n+1}`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `Q_i` for `i` in `[f_{n+1}]`.
    pub fn set(&self, i: usize) -> &IndexSubset {
        &self.sets[i - 1]
    }

    pub fn sets(&self) -> &[IndexSubset] {
        &self.sets
    }

    /// `(i, Q_i)` pairs in catalog order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &IndexSubset)> {
        self.sets.iter().enumerate().map(|(k, s)| (k + 1, s))
    }

    /// Catalog position of a lacunar subset of `[n-1]`.
    pub fn index_of(&self, set: &IndexSubset) -> Option<usize> {
        let key = catalog_key(set.bits());
        self.sets.binary_search_by_key(&key, |s| catalog_key(s.bits())).ok().map(|k| k + 1)
    }

    /// Smallest `i` with `Q_i' ⊆ J`.
    pub fn first_with_non_shadow_in(&self, j: &IndexSubset) -> Option<usize> {
        self.sets.iter().position(|q| non_shadow(q, self.n).is_subset(j)).map(|k| k + 1)
    }

    /// The unique lacunar `I` with `I' ⊆ J ⊆ [n-1] \ I`, by a forward scan.
    pub fn locate_interval(&self, j: &IndexSubset) -> Result<usize> {
        let found = self.sets.iter().position(|q| in_interval(q, j, self.n)).map(|k| k + 1);
        let i = found.ok_or_else(|| Error::Internal(format!("no lacunar interval contains {j}")))?;
        debug_assert_eq!(self.interval_matches(j).len(), 1, "interval partition is not unique at {j}");
        Ok(i)
    }

    /// Every catalog position whose interval `[I', [n-1] \ I]` contains `J`.
    pub fn interval_matches(&self, j: &IndexSubset) -> Vec<usize> {
        self.iter().filter(|(_, q)| in_interval(q, j, self.n)).map(|(i, _)| i).collect()
    }
}

fn in_interval(q: &IndexSubset, j: &IndexSubset, n: usize) -> bool {
    non_shadow(q, n).is_subset(j) && j.is_subset(&q.complement())
}

fn collect_lacunar(universe: usize, next: usize, bits: u64, out: &mut Vec<u64>) {
    out.push(bits);
    for k in next..=universe {
        collect_lacunar(universe, k + 2, bits | (1 << (k - 1)), out);
    }
}

/// Lacunar iff no two consecutive members, checked element by element.
pub fn is_lacunar_by_scan(set: &IndexSubset) -> bool {
    let v = set.to_vec();
    v.windows(2).all(|w| w[1] != w[0] + 1)
}

/// `m_{I,l}`: distance from `l` up to the next element of the enclosure
/// `{0} ∪ I ∪ {n+1}`. `I` must lie in `[n]`.
pub fn m_value(set: &IndexSubset, n: usize, l: usize) -> Result<usize> {
    if l == 0 || l > n {
        return Err(Error::IndexOutOfRange { index: l, max: n });
    }
    if set.iter().any(|k| k > n) {
        return Err(Error::InvalidSubset(format!("{set} is not contained in [{n}]")));
    }
    let next = (l..=n).find(|&k| set.contains(k)).unwrap_or(n + 1);
    Ok(next - l)
}

/// `(m_{I,1}, ..., m_{I,n})`.
pub fn m_vector(set: &IndexSubset, n: usize) -> Result<Vec<usize>> {
    (1..=n).map(|l| m_value(set, n, l)).collect()
}

/// The non-shadow `I' = [n-1] \ (I ∪ (I - 1))`.
pub fn non_shadow(set: &IndexSubset, n: usize) -> IndexSubset {
    let universe = n.saturating_sub(1);
    let all = IndexSubset::full(universe).expect("universe within bitmask width");
    let covered = set.union(&set.shift_down());
    IndexSubset::from_bits(universe, all.bits() & !covered.bits()).expect("subset of [n-1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(universe: usize, elements: &[usize]) -> IndexSubset {
        IndexSubset::from_elements(universe, elements.iter().copied()).unwrap()
    }

    fn listing(n: usize) -> Vec<String> {
        LacunarCatalog::new(n).unwrap().sets().iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn small_catalogs() {
        assert_eq!(listing(4), ["{}", "{1}", "{2}", "{3}", "{1,3}"]);
        let five = listing(5);
        assert_eq!(five.len(), 8);
        assert_eq!(&five[5..], ["{1,3}", "{1,4}", "{2,4}"]);
        let six = listing(6);
        assert_eq!(six.len(), 13);
        assert_eq!(
            six,
            ["{}", "{1}", "{2}", "{3}", "{4}", "{1,3}", "{5}", "{1,4}", "{1,5}", "{2,4}", "{2,5}", "{3,5}", "{1,3,5}"]
        );
        assert_eq!(listing(1), ["{}"]);
    }

    #[test]
    fn fibonacci_values() {
        let f: Vec<u32> = (0..10).map(|m| fibonacci(m).try_into().unwrap()).collect();
        assert_eq!(f, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn m_values() {
        let i = s(5, &[2, 3]);
        assert_eq!(m_vector(&i, 5).unwrap(), [1, 0, 0, 2, 1]);
        let empty = s(5, &[]);
        assert_eq!(m_vector(&empty, 5).unwrap(), [5, 4, 3, 2, 1]);
        assert!(m_value(&i, 5, 0).is_err());
        assert!(m_value(&i, 5, 6).is_err());
    }

    #[test]
    fn non_shadows() {
        assert_eq!(non_shadow(&s(5, &[2, 3]), 5), s(4, &[4]));
        assert_eq!(non_shadow(&s(3, &[1]), 4), s(3, &[2, 3]));
        assert_eq!(non_shadow(&s(3, &[]), 4), s(3, &[1, 2, 3]));
    }

    #[test]
    fn interval_location() {
        let cat = LacunarCatalog::new(4).unwrap();
        assert_eq!(cat.set(cat.locate_interval(&s(3, &[1, 2])).unwrap()), &s(3, &[3]));
        assert_eq!(cat.set(cat.locate_interval(&s(3, &[1, 2, 3])).unwrap()), &s(3, &[]));
        assert_eq!(cat.set(cat.locate_interval(&s(3, &[])).unwrap()), &s(3, &[1, 3]));
    }
}
