//! Small sets of variable indices packed into a `u64`.

use std::fmt;

/// Largest number of variables a seed may have for homomorphism work.
pub const MAX_VARS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., len - 1}`.
    pub fn range(len: usize) -> Self {
        debug_assert!(len <= MAX_VARS);
        if len == MAX_VARS {
            Self(u64::MAX)
        } else {
            Self((1u64 << len) - 1)
        }
    }

    /// `{start, .., end - 1}`.
    pub fn span(start: usize, end: usize) -> Self {
        Self(Self::range(end).0 & !Self::range(start).0)
    }

    pub fn singleton(i: usize) -> Self {
        Self(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1u64 << i)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VarSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: VarSet = [0, 3, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(3) && !a.contains(4) && !a.contains(100));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(VarSet::span(2, 5).iter().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(VarSet::range(64).len(), 64);
        assert!(VarSet::singleton(3).is_subset(a));
        assert_eq!(a.difference(VarSet::range(4)), VarSet::singleton(5));
    }
}
