//! Edge-id bitsets.
//!
//! Hypergraphs of interest here have at most 64 edges, so the
//! solvers are generic over [`Mask`] and run on a bare `u64` when they can.
//! [`EdgeSet`] is the arbitrary-width fallback and the public set type.

use std::fmt;

/// Operations the exact solvers need from an edge-id set.
pub trait Mask: Clone + PartialEq + Send + Sync {
    fn zeros(len: usize) -> Self;
    fn insert(&mut self, i: usize);
    fn contains(&self, i: usize) -> bool;
    fn count(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn intersects(&self, other: &Self) -> bool;
    fn and_count(&self, other: &Self) -> usize;
    fn first(&self) -> Option<usize>;

    fn ones(&self, len: usize) -> Vec<usize> {
        (0..len).filter(|&i| self.contains(i)).collect()
    }
}

impl Mask for u64 {
    #[inline]
    fn zeros(len: usize) -> Self {
        debug_assert!(len <= 64);
        0
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    #[inline]
    fn contains(&self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn is_empty(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    #[inline]
    fn intersects(&self, other: &Self) -> bool {
        self & other != 0
    }
    #[inline]
    fn and_count(&self, other: &Self) -> usize {
        (self & other).count_ones() as usize
    }
    #[inline]
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
}

/// A set of edge ids (0-based internally) backed by 64-bit words.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(len: usize) -> Self {
        EdgeSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = EdgeSet::new(len);
        for i in ids {
            set.insert(i);
        }
        set
    }

    /// Low word, exact when the universe has at most 64 edges.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.words.len().max(other.words.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        EdgeSet {
            words: (0..n)
                .map(|i| f(get(&self.words, i), get(&other.words, i)))
                .collect(),
        }
    }
}

impl Mask for EdgeSet {
    fn zeros(len: usize) -> Self {
        EdgeSet::new(len)
    }
    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn and(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }
    fn and_not(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }
    fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }
    fn and_count(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
    fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

/// Renders as `{E1, E3}` with 1-based ids.
impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "E{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_set_crosses_word_boundary() {
        let s = EdgeSet::from_ids(130, [0, 63, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(s.count(), 4);
        let t = EdgeSet::from_ids(130, [64, 100]);
        assert_eq!(s.and_count(&t), 1);
        assert_eq!(s.and_not(&t).iter().collect::<Vec<_>>(), vec![0, 63, 129]);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(EdgeSet::from_ids(13, [0, 8, 12]).to_string(), "{E1, E9, E13}");
        assert_eq!(EdgeSet::new(3).to_string(), "{}");
    }
}
