//! Fixed-width bit sets indexed by position.
//!
//! The same representation backs two unrelated kinds of sets: sets of
//! valuations over the full valuation space and sets of states of a model.
//! A zero-sized tag keeps them from being mixed up at compile time.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

/// Tag for sets of valuations (subsets of the full valuation space).
#[derive(Debug)]
pub enum WorldTag {}

/// Tag for sets of model states.
#[derive(Debug)]
pub enum StateTag {}

pub struct BitSet<T> {
    len: usize,
    words: Vec<u64>,
    _tag: PhantomData<fn() -> T>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl<T> BitSet<T> {
    pub fn empty(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)], _tag: PhantomData }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self { len, words: vec![u64::MAX; word_count(len)], _tag: PhantomData };
        set.trim();
        set
    }

    /// Builds a set from a mask; bit `i` of `mask` is element `i`. Requires `len <= 64`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask-backed sets hold at most 64 elements");
        let mut set = Self::empty(len);
        if len > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// The low 64 bits as a mask. Requires `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64, "set too wide for a u64 mask");
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Width of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} outside universe of {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "bit set universes differ");
        let mut out = Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
            _tag: PhantomData,
        };
        out.trim();
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self { len: self.len, words: self.words.iter().map(|w| !w).collect(), _tag: PhantomData };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "bit set universes differ");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "bit set universes differ");
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }
}

impl<T> Clone for BitSet<T> {
    fn clone(&self) -> Self {
        Self { len: self.len, words: self.words.clone(), _tag: PhantomData }
    }
}

impl<T> PartialEq for BitSet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl<T> Eq for BitSet<T> {}

impl<T> Hash for BitSet<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.words.hash(state);
    }
}

impl<T> Ord for BitSet<T> {
    /// Orders by universe width, then by the set read as a binary number.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl<T> PartialOrd for BitSet<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> fmt::Debug for BitSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T> fmt::Display for BitSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A set of valuations over the full valuation space of a signature.
pub type Event = BitSet<WorldTag>;

/// A set of states of a model.
pub type StateSet = BitSet<StateTag>;
