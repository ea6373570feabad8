//! Fixed-width sets of small integer ids.

use std::fmt;

/// A set of ids in `0..128`, stored as a single `u128`.
///
/// Points of posets and spectra, and elements of the small lattices that are
/// enumerated exhaustively, are all addressed through this type.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet(u128);

impl IdSet {
    pub const CAPACITY: usize = 128;

    pub const EMPTY: IdSet = IdSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        IdSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "IdSet capacity is {}", Self::CAPACITY);
        if n == Self::CAPACITY {
            IdSet(u128::MAX)
        } else {
            IdSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        assert!(i < Self::CAPACITY, "id {i} out of IdSet range");
        IdSet(1u128 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < Self::CAPACITY && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < Self::CAPACITY {
            self.0 &= !(1u128 << i);
        }
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        self.union(Self::singleton(i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        IdSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        IdSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        IdSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image of the set under an id map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> IdSet {
        self.iter().map(f).collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for IdSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for IdSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(IdSet::EMPTY, IdSet::with)
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a: IdSet = [0, 3, 127].into_iter().collect();
        let b: IdSet = [3, 4].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(127));
        assert!(!a.contains(128));
        assert_eq!(a.intersection(b).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(a.union(b).len(), 4);
        assert_eq!(a.difference(b).iter().collect::<Vec<_>>(), vec![0, 127]);
        assert!(IdSet::singleton(3).is_subset(b));
        assert_eq!(IdSet::full(128).len(), 128);
        assert_eq!(IdSet::full(0), IdSet::EMPTY);
        assert_eq!(b.first(), Some(3));
        assert_eq!(IdSet::EMPTY.first(), None);
    }
}
