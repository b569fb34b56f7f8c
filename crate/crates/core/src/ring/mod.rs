//! Finite rings with identity, stored as Cayley tables over `0..order`.

mod axioms;
mod build;
mod ideals;
mod roles;

pub use axioms::{verify_ring_axioms, RingTables};
pub(crate) use build::cosets as cosets_of;
pub use build::{PatternMatrix, QuotientRing};
pub use ideals::{RingIdeals, Sidedness};
pub use roles::{ElementRoles, RingPredicates};

use std::fmt;

use sha2::{Digest, Sha256};

use crate::mask::SubsetMask;

/// Constructors refuse to materialise tables larger than this.
pub const MAX_TABLE_ORDER: usize = 2048;

/// A finite ring with identity. Element 0 is always the additive identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    label: String,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: usize,
    names: Vec<String>,
}

impl FiniteRing {
    /// Assembles a ring from tables already known to satisfy the axioms.
    pub(crate) fn from_parts(
        label: String,
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        one: usize,
        names: Vec<String>,
    ) -> Self {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(mul.len(), order * order);
        debug_assert_eq!(names.len(), order);
        let neg = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| add[a * order + b] == 0)
                    .expect("additive inverse exists") as u32
            })
            .collect();
        FiniteRing {
            label,
            order,
            add,
            mul,
            neg,
            one,
            names,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn nonzero_elements(&self) -> std::ops::Range<usize> {
        1..self.order
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// The principal right ideal `aR`, which is one row of the table.
    pub fn right_multiples(&self, a: usize) -> SubsetMask {
        SubsetMask::from_indices(self.order, (0..self.order).map(|r| self.mul(a, r)))
    }

    /// The principal left ideal `Ra`, one column of the table.
    pub fn left_multiples(&self, a: usize) -> SubsetMask {
        SubsetMask::from_indices(self.order, (0..self.order).map(|r| self.mul(r, a)))
    }

    pub fn tables(&self) -> RingTables {
        let n = self.order;
        RingTables {
            order: n,
            add: (0..n)
                .map(|a| (0..n).map(|b| self.add(a, b)).collect())
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
                .collect(),
            one: self.one,
        }
    }

    /// SHA-256 over the tables; equal digests mean equal structures.
    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"ring");
        h.update((self.order as u64).to_le_bytes());
        h.update((self.one as u64).to_le_bytes());
        for v in self.add.iter().chain(&self.mul) {
            h.update(v.to_le_bytes());
        }
        h.finalize().into()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("one", &self.one)
            .finish()
    }
}

/// Searches for a ring isomorphism between two small rings by backtracking.
///
/// Intended for tests and sanity checks; the search is exponential.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    if a.one() != 0 {
        if used[b.one()] {
            return None;
        }
        map[a.one()] = b.one();
        used[b.one()] = true;
    }

    fn consistent(a: &FiniteRing, b: &FiniteRing, map: &[usize]) -> bool {
        let n = a.order();
        for x in 0..n {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if map[y] == usize::MAX {
                    continue;
                }
                let s = a.add(x, y);
                if map[s] != usize::MAX && map[s] != b.add(map[x], map[y]) {
                    return false;
                }
                let p = a.mul(x, y);
                if map[p] != usize::MAX && map[p] != b.mul(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }

    fn go(a: &FiniteRing, b: &FiniteRing, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for y in 0..a.order() {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map) && go(a, b, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if !consistent(a, b, &map) {
        return None;
    }
    if go(a, b, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
