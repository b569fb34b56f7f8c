//! Fixed-width bit sets over element indices.

use std::fmt;

const WORD: usize = 64;

/// A set of element indices drawn from a carrier of known size.
///
/// Every ideal, submodule, annihilator and element class in the crate is a
/// `SubsetMask`. Bits at or beyond `carrier_size` are never set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    words: Vec<u64>,
    carrier_size: usize,
}

impl SubsetMask {
    pub fn empty(carrier_size: usize) -> Self {
        SubsetMask {
            words: vec![0; carrier_size.div_ceil(WORD)],
            carrier_size,
        }
    }

    pub fn full(carrier_size: usize) -> Self {
        let mut mask = Self::empty(carrier_size);
        for w in mask.words.iter_mut() {
            *w = u64::MAX;
        }
        mask.trim();
        mask
    }

    /// The singleton `{0}`.
    pub fn zero(carrier_size: usize) -> Self {
        let mut mask = Self::empty(carrier_size);
        mask.insert(0);
        mask
    }

    /// Builds a mask from indices. Panics on an index outside the carrier.
    pub fn from_indices<I: IntoIterator<Item = usize>>(carrier_size: usize, indices: I) -> Self {
        let mut mask = Self::empty(carrier_size);
        for i in indices {
            mask.insert(i);
        }
        mask
    }

    pub fn from_predicate(carrier_size: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut mask = Self::empty(carrier_size);
        for i in 0..carrier_size {
            if pred(i) {
                mask.insert(i);
            }
        }
        mask
    }

    fn trim(&mut self) {
        let rem = self.carrier_size % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.carrier_size && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Returns true if the index was newly inserted.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.carrier_size,
            "index {i} outside carrier of size {}",
            self.carrier_size
        );
        let bit = 1u64 << (i % WORD);
        let word = &mut self.words[i / WORD];
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.carrier_size {
            self.words[i / WORD] &= !(1u64 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when the mask is exactly `{0}`.
    pub fn is_zero_only(&self) -> bool {
        self.contains(0) && self.len() == 1
    }

    /// True when the mask has an element other than 0.
    pub fn has_nonzero(&self) -> bool {
        self.words
            .iter()
            .enumerate()
            .any(|(k, &w)| if k == 0 { w & !1 != 0 } else { w != 0 })
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.carrier_size
    }

    pub fn is_subset(&self, other: &SubsetMask) -> bool {
        self.check_same_carrier(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &SubsetMask) -> bool {
        self.check_same_carrier(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// True if the intersection contains something besides 0.
    pub fn meets_nontrivially(&self, other: &SubsetMask) -> bool {
        self.check_same_carrier(other);
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .any(|(k, (a, b))| {
                let w = a & b;
                if k == 0 {
                    w & !1 != 0
                } else {
                    w != 0
                }
            })
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        self.check_same_carrier(other);
        SubsetMask {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
            carrier_size: self.carrier_size,
        }
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        self.check_same_carrier(other);
        SubsetMask {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            carrier_size: self.carrier_size,
        }
    }

    pub fn difference(&self, other: &SubsetMask) -> SubsetMask {
        self.check_same_carrier(other);
        SubsetMask {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            carrier_size: self.carrier_size,
        }
    }

    pub fn complement(&self) -> SubsetMask {
        let mut out = SubsetMask {
            words: self.words.iter().map(|w| !w).collect(),
            carrier_size: self.carrier_size,
        };
        out.trim();
        out
    }

    pub fn intersect_with(&mut self, other: &SubsetMask) {
        self.check_same_carrier(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &SubsetMask) {
        self.check_same_carrier(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(k * WORD + bit)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_same_carrier(&self, other: &SubsetMask) {
        debug_assert_eq!(
            self.carrier_size, other.carrier_size,
            "masks over different carriers"
        );
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.carrier_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_is_trimmed() {
        let m = SubsetMask::full(70);
        assert_eq!(m.len(), 70);
        assert!(!m.contains(70));
        assert_eq!(m.complement().len(), 0);
    }

    #[test]
    fn zero_only() {
        let z = SubsetMask::zero(5);
        assert!(z.is_zero_only());
        assert!(!z.has_nonzero());
        let mut m = z.clone();
        m.insert(3);
        assert!(m.has_nonzero());
        assert!(!SubsetMask::zero(5).meets_nontrivially(&m));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            n in 1usize..200,
            a in proptest::collection::vec(0usize..200, 0..40),
            b in proptest::collection::vec(0usize..200, 0..40),
        ) {
            use std::collections::BTreeSet;
            let a: BTreeSet<usize> = a.into_iter().filter(|&i| i < n).collect();
            let b: BTreeSet<usize> = b.into_iter().filter(|&i| i < n).collect();
            let ma = SubsetMask::from_indices(n, a.iter().copied());
            let mb = SubsetMask::from_indices(n, b.iter().copied());
            prop_assert_eq!(ma.to_vec(), a.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(ma.union(&mb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(ma.intersection(&mb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(ma.difference(&mb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(ma.is_subset(&mb), a.is_subset(&b));
            prop_assert_eq!(ma.complement().len(), n - a.len());
            prop_assert_eq!(
                ma.meets_nontrivially(&mb),
                a.intersection(&b).any(|&i| i != 0)
            );
        }
    }
}
