//! Fixed-width vertex sets used as adjacency rows.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not};

/// Maximum number of vertices a [`crate::Graph`] can hold.
pub const CAPACITY: usize = 256;

const WORDS: usize = CAPACITY / 64;

/// A set of vertex indices below [`CAPACITY`], stored as a fixed bit row.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitRow([u64; WORDS]);

impl BitRow {
    pub const EMPTY: BitRow = BitRow([0; WORDS]);

    /// The set `{0, 1, ..., n-1}`.
    pub fn prefix(n: usize) -> BitRow {
        debug_assert!(n <= CAPACITY);
        let mut row = BitRow::EMPTY;
        for (w, word) in row.0.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        row
    }

    pub fn singleton(i: usize) -> BitRow {
        let mut row = BitRow::EMPTY;
        row.insert(i);
        row
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> BitRow {
        let mut row = BitRow::EMPTY;
        for i in it {
            row.insert(i);
        }
        row
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.0[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &BitRow) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Elements of `self` that are not in `other`.
    #[inline]
    pub fn difference(&self, other: &BitRow) -> BitRow {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= !b;
        }
        out
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (w, &word) in self.0.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Removes and returns the smallest element.
    #[inline]
    pub fn pop_first(&mut self) -> Option<usize> {
        for (w, word) in self.0.iter_mut().enumerate() {
            if *word != 0 {
                let b = word.trailing_zeros() as usize;
                *word &= *word - 1;
                return Some(w * 64 + b);
            }
        }
        None
    }

    pub fn iter(&self) -> Iter {
        Iter { row: *self }
    }
}

pub struct Iter {
    row: BitRow,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        self.row.pop_first()
    }
}

impl IntoIterator for BitRow {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for BitRow {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> BitRow {
        BitRow::from_indices(iter)
    }
}

impl BitAnd for BitRow {
    type Output = BitRow;

    #[inline]
    fn bitand(mut self, rhs: BitRow) -> BitRow {
        self &= rhs;
        self
    }
}

impl BitAndAssign for BitRow {
    #[inline]
    fn bitand_assign(&mut self, rhs: BitRow) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a &= b;
        }
    }
}

impl BitOr for BitRow {
    type Output = BitRow;

    #[inline]
    fn bitor(mut self, rhs: BitRow) -> BitRow {
        self |= rhs;
        self
    }
}

impl BitOrAssign for BitRow {
    #[inline]
    fn bitor_assign(&mut self, rhs: BitRow) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a |= b;
        }
    }
}

impl BitXor for BitRow {
    type Output = BitRow;

    #[inline]
    fn bitxor(mut self, rhs: BitRow) -> BitRow {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a ^= b;
        }
        self
    }
}

impl Not for BitRow {
    type Output = BitRow;

    #[inline]
    fn not(mut self) -> BitRow {
        for a in self.0.iter_mut() {
            *a = !*a;
        }
        self
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
