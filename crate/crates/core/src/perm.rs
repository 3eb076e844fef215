//! Permutations of `[n]` in one-line notation.
//!
//! A permutation `w` is stored as its one-line word `w(1) w(2) ... w(n)`.
//! Products follow the convention `(pq)(i) = p(q(i))`, so `p * q` applies `q`
//! first. With the deck reading (cards `w(1), ..., w(n)` from top to bottom),
//! right multiplication by `q` permutes positions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// Largest supported degree; values are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// A permutation of `[n]`, `n >= 1`.
///
/// The derived ordering is the lexicographic order on one-line words when the
/// degrees agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Box<[u8]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        Ok(Permutation { word: (1..=n as u8).collect() })
    }

    /// Builds a permutation from its one-line word (1-indexed values).
    pub fn from_word(word: &[usize]) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &v in word {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{word:?} is not a permutation of [{n}]")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { word: word.iter().map(|&v| v as u8).collect() })
    }

    /// The cycle `i_1 -> i_2 -> ... -> i_k -> i_1`, fixing everything else.
    pub fn cycle(n: usize, indices: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n)?;
        if indices.is_empty() {
            return Err(Error::InvalidPermutation("empty cycle".into()));
        }
        let mut seen = vec![false; n];
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, max: n });
            }
            if seen[i - 1] {
                return Err(Error::RepeatedIndex(i));
            }
            seen[i - 1] = true;
        }
        for (k, &i) in indices.iter().enumerate() {
            let next = indices[(k + 1) % indices.len()];
            w.word[i - 1] = next as u8;
        }
        Ok(w)
    }

    /// `cyc_{a, a+1, ..., b}` for `a <= b`.
    pub fn consecutive_cycle(n: usize, a: usize, b: usize) -> Result<Self> {
        let indices: Vec<usize> = (a..=b).collect();
        Self::cycle(n, &indices)
    }

    /// `cyc_{b, b-1, ..., a}` for `a <= b`, the inverse of [`Self::consecutive_cycle`].
    pub fn consecutive_cycle_rev(n: usize, a: usize, b: usize) -> Result<Self> {
        let indices: Vec<usize> = (a..=b).rev().collect();
        Self::cycle(n, &indices)
    }

    /// The simple transposition `s_i = cyc_{i, i+1}`, `i` in `[n-1]`.
    pub fn simple_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        Self::cycle(n, &[i, i + 1])
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// `w(i)` for `i` in `[n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// `r(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { word: other.word.iter().map(|&q| self.word[q as usize - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.word.len()].into_boxed_slice();
        for (k, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (k + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// `{i in [n-1] : w(i) > w(i+1)}`.
    pub fn descent_set(&self) -> IndexSubset {
        let n = self.degree();
        let mut bits = 0u64;
        for i in 1..n.min(64) {
            if self.word[i - 1] > self.word[i] {
                bits |= 1 << (i - 1);
            }
        }
        IndexSubset::from_bits((n - 1).min(crate::subset::MAX_UNIVERSE), bits).expect("descents lie in [n-1]")
    }

    /// Lexicographic comparison of one-line words.
    pub fn lex_compare(&self, other: &Permutation) -> Result<Ordering> {
        self.check_degree(other)?;
        Ok(self.word.cmp(&other.word))
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    /// Position of this permutation in the lexicographic listing of S_n, from 0.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller_later = self.word[i + 1..].iter().filter(|&&v| v < self.word[i]).count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    /// Inverse of [`Self::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Result<Permutation> {
        let total = factorial(n).ok_or(Error::InvalidPermutation(format!("{n}! overflows")))?;
        if rank >= total {
            return Err(Error::InvalidPermutation(format!("rank {rank} >= {n}!")));
        }
        let mut digits = vec![0usize; n];
        for k in (0..n).rev() {
            let base = n - k;
            digits[k] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let word: Box<[u8]> = digits.into_iter().map(|d| pool.remove(d)).collect();
        Ok(Permutation { word })
    }

    /// Next permutation in lexicographic order, if any.
    pub fn lex_successor(&self) -> Option<Permutation> {
        let mut w = self.word.clone();
        let n = w.len();
        let i = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i])?;
        w.swap(i, j);
        w[i + 1..].reverse();
        Some(Permutation { word: w })
    }
}

pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// All of S_n in lexicographic order.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    let first = Permutation::identity(n)?;
    let mut out = Vec::with_capacity(factorial(n).unwrap_or(0));
    let mut cur = Some(first);
    while let Some(p) = cur {
        cur = p.lex_successor();
        out.push(p);
    }
    Ok(out)
}

/// Maximal runs of consecutive integers in `set`, as blocks of positions:
/// a run `{a, ..., b}` of indices yields the position block `a ..= b + 1`.
pub fn blocks_of(n: usize, set: &IndexSubset) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 1;
    while start <= n {
        let mut end = start;
        while end < n && set.contains(end) {
            end += 1;
        }
        blocks.push((start, end));
        start = end + 1;
    }
    blocks
}

/// The Young subgroup `G(I)` generated by `{s_i : i in I}`, as the product
/// of full symmetric groups on the position blocks. Sorted lexicographically.
pub fn young_subgroup(n: usize, set: &IndexSubset) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    if set.iter().any(|i| i >= n) {
        return Err(Error::InvalidSubset(format!("{set} is not contained in [{}]", n - 1)));
    }
    let identity = Permutation::identity(n)?;
    let mut elements = vec![identity.word.to_vec()];
    for (a, b) in blocks_of(n, set) {
        if a == b {
            continue;
        }
        let block_perms = all_permutations(b - a + 1)?;
        let mut next = Vec::with_capacity(elements.len() * block_perms.len());
        for base in &elements {
            for bp in &block_perms {
                let mut w = base.clone();
                for (k, &v) in bp.word.iter().enumerate() {
                    w[a - 1 + k] = (a - 1) as u8 + v;
                }
                next.push(w);
            }
        }
        elements = next;
    }
    let mut out: Vec<Permutation> = elements.into_iter().map(|w| Permutation { word: w.into_boxed_slice() }).collect();
    out.sort();
    Ok(out)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"3,2,4,1"`; for degree below 10, also the compact `"3241"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidPermutation(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidPermutation(s.to_string())))
                .collect::<Result<_>>()?
        };
        Permutation::from_word(&word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn identity_cases() {
        assert_eq!(Permutation::identity(3).unwrap().word(), vec![1, 2, 3]);
        assert_eq!(Permutation::identity(1).unwrap().word(), vec![1]);
        assert_eq!(Permutation::identity(0), Err(Error::EmptyDegree));
        let w = p("3,1,4,2");
        assert_eq!(Permutation::identity(4).unwrap().compose(&w).unwrap(), w);
    }

    #[test]
    fn compose_follows_right_to_left_convention() {
        assert_eq!(p("2,1,3").compose(&p("1,3,2")).unwrap(), p("2,3,1"));
        let s1 = Permutation::simple_transposition(3, 1).unwrap();
        assert!(s1.compose(&s1).unwrap().is_identity());
        let c12 = Permutation::cycle(3, &[1, 2]).unwrap();
        let c23 = Permutation::cycle(3, &[2, 3]).unwrap();
        // r(1) = c12(c23(1)) = 2, r(2) = c12(3) = 3, r(3) = c12(2) = 1
        assert_eq!(c12.compose(&c23).unwrap(), p("2,3,1"));
        assert_eq!(c23.compose(&c12).unwrap(), p("3,1,2"));
        assert!(p("1,2").compose(&p("1,2,3")).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(Permutation::cycle(3, &[1, 2, 3]).unwrap(), p("2,3,1"));
        assert!(Permutation::cycle(3, &[2]).unwrap().is_identity());
        assert_eq!(Permutation::cycle(4, &[2, 3, 4]).unwrap(), p("1,3,4,2"));
        assert_eq!(Permutation::cycle(3, &[1, 1]), Err(Error::RepeatedIndex(1)));
        assert!(Permutation::cycle(3, &[4]).is_err());
    }

    #[test]
    fn descents() {
        assert_eq!(p("3,2,4,1").descent_set().to_vec(), vec![1, 3]);
        assert!(Permutation::identity(5).unwrap().descent_set().is_empty());
        assert_eq!(p("4,3,2,1").descent_set().to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn lexicographic_extremes() {
        let all = all_permutations(4).unwrap();
        assert_eq!(all.len(), 24);
        assert!(all[0].is_identity());
        assert_eq!(all[23], p("4,3,2,1"));
        assert_eq!(p("1,3,2").lex_compare(&p("2,1,3")).unwrap(), Ordering::Less);
        for (k, w) in all.iter().enumerate() {
            assert_eq!(w.lex_rank(), k);
            assert_eq!(&Permutation::from_lex_rank(4, k).unwrap(), w);
        }
    }

    #[test]
    fn young_subgroups() {
        let two = IndexSubset::from_elements(2, [2]).unwrap();
        assert_eq!(young_subgroup(3, &two).unwrap(), vec![p("1,2,3"), p("1,3,2")]);
        assert_eq!(young_subgroup(3, &IndexSubset::full(2).unwrap()).unwrap().len(), 6);
        assert_eq!(young_subgroup(5, &IndexSubset::from_elements(4, [2, 4]).unwrap()).unwrap().len(), 4);
        assert!(young_subgroup(3, &IndexSubset::from_elements(3, [3]).unwrap()).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3241"), p("3,2,4,1"));
        assert_eq!(p("[4312]").to_string(), "4,3,1,2");
        assert!("1,1".parse::<Permutation>().is_err());
    }
}
