//! Item sets as bitmasks over `[m]`.
//!
//! Instances are desk-scale (m <= 20), so a `u32` bitmask with dense
//! subset enumeration is the right representation.

use std::fmt;

/// Hard cap on item count so bitmask enumeration stays sane.
pub const MAX_ITEMS: usize = 20;

/// A set of item indices in `0..m`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ItemSet(pub u32);

impl ItemSet {
    pub const EMPTY: ItemSet = ItemSet(0);

    pub fn empty() -> Self {
        ItemSet(0)
    }

    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_ITEMS, "item count {m} exceeds MAX_ITEMS");
        ItemSet(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(j: usize) -> Self {
        assert!(j < MAX_ITEMS);
        ItemSet(1 << j)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ItemSet::empty();
        for j in iter {
            s = s.with(j);
        }
        s
    }

    pub fn contains(self, j: usize) -> bool {
        j < MAX_ITEMS && self.0 & (1 << j) != 0
    }

    pub fn with(self, j: usize) -> Self {
        assert!(j < MAX_ITEMS);
        ItemSet(self.0 | (1 << j))
    }

    pub fn without(self, j: usize) -> Self {
        assert!(j < MAX_ITEMS);
        ItemSet(self.0 & !(1 << j))
    }

    pub fn union(self, other: ItemSet) -> Self {
        ItemSet(self.0 | other.0)
    }

    pub fn intersect(self, other: ItemSet) -> Self {
        ItemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ItemSet) -> Self {
        ItemSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: ItemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_ITEMS).filter(move |&j| self.contains(j))
    }

    /// All subsets of `[m]`, in mask order (empty set first).
    pub fn all_subsets(m: usize) -> impl Iterator<Item = ItemSet> {
        assert!(m <= MAX_ITEMS);
        (0u64..(1u64 << m)).map(|mask| ItemSet(mask as u32))
    }

    /// All subsets of `self`, in descending mask order ending with the empty set.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter {
            mask: self.0,
            current: self.0,
            done: false,
        }
    }
}

/// Iterates over all submasks of a mask via the standard `(s - 1) & mask` walk.
pub struct SubsetIter {
    mask: u32,
    current: u32,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = ItemSet;

    fn next(&mut self) -> Option<ItemSet> {
        if self.done {
            return None;
        }
        let out = ItemSet(self.current);
        if self.current == 0 {
            self.done = true;
        } else {
            self.current = (self.current - 1) & self.mask;
        }
        Some(out)
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for j in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
