//! Finite right modules over finite rings.

mod analysis;
mod axioms;
mod build;

pub use analysis::{ModulePredicates, ModuleProfile, TorsionPartition};
pub(crate) use axioms::{check_abelian_group, check_table};
pub use axioms::{names as axiom_names, verify_module_axioms, ModuleTables};

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::mask::SubsetMask;
use crate::ring::FiniteRing;

/// A finite right module `M` over `ring`: an addition table on `0..order`
/// and an action table with entry `[m][r] = m·r`. Index 0 is the zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    label: String,
    order: usize,
    add: Vec<u32>,
    action: Vec<u32>,
    neg: Vec<u32>,
    names: Vec<String>,
}

impl FiniteModule {
    pub(crate) fn from_parts(
        ring: Arc<FiniteRing>,
        label: String,
        order: usize,
        add: Vec<u32>,
        action: Vec<u32>,
        names: Vec<String>,
    ) -> Self {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(action.len(), order * ring.order());
        debug_assert_eq!(names.len(), order);
        let neg = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| add[a * order + b] == 0)
                    .expect("additive inverse exists") as u32
            })
            .collect();
        FiniteModule {
            ring,
            label,
            order,
            add,
            action,
            neg,
            names,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
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

    pub fn is_zero_module(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `m·r`.
    #[inline]
    pub fn act(&self, m: usize, r: usize) -> usize {
        self.action[m * self.ring.order() + r] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn nonzero_elements(&self) -> std::ops::Range<usize> {
        1..self.order
    }

    pub fn element_name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// The cyclic submodule `mR`.
    pub fn cyclic_submodule(&self, m: usize) -> SubsetMask {
        SubsetMask::from_indices(self.order, self.ring.elements().map(|r| self.act(m, r)))
    }

    /// `Mr = {n·r : n in M}`.
    pub fn multiples_by(&self, r: usize) -> SubsetMask {
        SubsetMask::from_indices(self.order, self.elements().map(|n| self.act(n, r)))
    }

    pub fn tables(&self) -> ModuleTables {
        let n = self.order;
        let k = self.ring.order();
        ModuleTables {
            order: n,
            add: (0..n)
                .map(|a| (0..n).map(|b| self.add(a, b)).collect())
                .collect(),
            action: (0..n)
                .map(|m| (0..k).map(|r| self.act(m, r)).collect())
                .collect(),
        }
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"module");
        h.update(self.ring.digest());
        h.update((self.order as u64).to_le_bytes());
        for v in self.add.iter().chain(&self.action) {
            h.update(v.to_le_bytes());
        }
        h.finalize().into()
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("ring", &self.ring.label())
            .finish()
    }
}
