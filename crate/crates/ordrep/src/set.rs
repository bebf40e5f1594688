//! Dense bit sets over the element indices of a fixed carrier.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices drawn from a universe of fixed size.
///
/// Every member is `< universe()`. Binary operations require both operands to
/// share the same universe; mixing sets from different posets is a bug.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: usize,
    blocks: Vec<u64>,
}

fn block_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl ElemSet {
    /// The empty set over a universe of `universe` indices.
    pub fn new(universe: usize) -> Self {
        ElemSet {
            universe,
            blocks: vec![0; block_count(universe)],
        }
    }

    /// The set containing every index of the universe.
    pub fn full(universe: usize) -> Self {
        let mut s = ElemSet {
            universe,
            blocks: vec![!0u64; block_count(universe)],
        };
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = ElemSet::new(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Clears any bits above `universe` so that equality and popcounts stay exact.
    fn trim(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `i`; returns true when the element was not already present.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.universe,
            "index {} outside universe {}",
            i,
            self.universe
        );
        let b = &mut self.blocks[i / 64];
        let mask = 1u64 << (i % 64);
        let added = *b & mask == 0;
        *b |= mask;
        added
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.universe);
        let b = &mut self.blocks[i / 64];
        let mask = 1u64 << (i % 64);
        let present = *b & mask != 0;
        *b &= !mask;
        present
    }

    /// In-place union; returns true when any new element was added.
    pub fn union_with(&mut self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        let mut changed = false;
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            let merged = *a | *b;
            changed |= merged != *a;
            *a = merged;
        }
        changed
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= *b;
        }
    }

    pub fn subtract(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !*b;
        }
    }

    pub fn and(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn or(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn minus(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> ElemSet {
        let mut s = ElemSet {
            universe: self.universe,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .any(|(a, b)| a & b != 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Iterates members in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            blocks: &self.blocks,
            block: 0,
            bits: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    blocks: &'a [u64],
    block: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.bits == 0 {
            self.block += 1;
            if self.block >= self.blocks.len() {
                return None;
            }
            self.bits = self.blocks[self.block];
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(self.block * 64 + tz)
    }
}

/// Canonical order: lexicographic on the ascending index sequence, so the
/// empty set sorts first and `{0,1}` sorts before `{1}`.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
