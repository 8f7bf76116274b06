//! Fixed-universe vertex sets backed by `u64` words.
//!
//! Every set carries its ground size `n`; members are always `< n` and the
//! unused high bits of the last word are kept at zero so that popcounts and
//! equality are exact.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

#[inline]
pub(crate) fn count_ones(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Iterates the set bit positions of a word slice in ascending order.
pub(crate) struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// A subset of `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    ground: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(ground: usize) -> Self {
        VertexSet {
            ground,
            words: vec![0; words_for(ground)],
        }
    }

    pub fn full(ground: usize) -> Self {
        let mut set = VertexSet {
            ground,
            words: vec![!0; words_for(ground)],
        };
        set.trim();
        set
    }

    /// Builds a set from member identifiers; returns the first out-of-range
    /// identifier as the error.
    pub fn from_members<I>(ground: usize, members: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = VertexSet::empty(ground);
        for v in members {
            if v >= ground {
                return Err(v);
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub(crate) fn from_words(ground: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(ground));
        let mut set = VertexSet { ground, words };
        set.trim();
        set
    }

    fn trim(&mut self) {
        let rem = self.ground % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.ground
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Panics if `v` is outside the ground set.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.ground,
            "vertex {v} outside ground set of size {}",
            self.ground
        );
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.ground {
            return false;
        }
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.ground && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        count_ones(&self.words)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        Ones::new(&self.words)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_ground(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_ground(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_ground(other);
        count_and(&self.words, &other.words)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_ground(other);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= b);
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_ground(other);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a |= b);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_ground(other);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= !b);
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> VertexSet {
        let words = self.words.iter().map(|w| !w).collect();
        VertexSet::from_words(self.ground, words)
    }

    #[inline]
    fn check_ground(&self, other: &VertexSet) {
        assert_eq!(
            self.ground, other.ground,
            "vertex sets over different ground sets"
        );
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet(n={}, ", self.ground)?;
        f.debug_set().entries(self.iter()).finish()?;
        f.write_str(")")
    }
}
