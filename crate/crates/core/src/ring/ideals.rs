use std::sync::OnceLock;

use super::FiniteRing;
use crate::error::{AlgebraError, Result};
use crate::lattice::{self, LatticeBudget};
use crate::mask::SubsetMask;

/// Which ideals an essentiality test quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    Right,
    TwoSided,
}

impl FiniteRing {
    fn closure_from(&self, seed: &SubsetMask, gens: &[usize], side: Sidedness) -> SubsetMask {
        let n = self.order();
        lattice::close(
            seed,
            gens.iter().copied(),
            |a, b| self.add(a, b),
            |e, out| {
                for r in 0..n {
                    out.push(self.mul(e, r));
                    if side == Sidedness::TwoSided {
                        out.push(self.mul(r, e));
                    }
                }
            },
        )
    }

    /// Smallest right ideal containing `gens`.
    pub fn right_ideal_closure(&self, gens: &[usize]) -> SubsetMask {
        self.closure_from(&SubsetMask::empty(self.order()), gens, Sidedness::Right)
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn two_sided_ideal_closure(&self, gens: &[usize]) -> SubsetMask {
        self.closure_from(&SubsetMask::empty(self.order()), gens, Sidedness::TwoSided)
    }

    fn is_additive_subgroup(&self, set: &SubsetMask) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
    }

    pub fn is_right_ideal(&self, set: &SubsetMask) -> bool {
        set.carrier_size() == self.order()
            && self.is_additive_subgroup(set)
            && set
                .iter()
                .all(|a| self.elements().all(|r| set.contains(self.mul(a, r))))
    }

    pub fn is_two_sided_ideal(&self, set: &SubsetMask) -> bool {
        self.is_right_ideal(set)
            && set
                .iter()
                .all(|a| self.elements().all(|r| set.contains(self.mul(r, a))))
    }

    /// All right ideals (or all two-sided ideals) by closure-based lattice
    /// generation, sorted by size then mask.
    pub fn enumerate_right_ideals(
        &self,
        two_sided: bool,
        budget: &LatticeBudget,
    ) -> Result<Vec<SubsetMask>> {
        let side = if two_sided {
            Sidedness::TwoSided
        } else {
            Sidedness::Right
        };
        lattice::generate(self.order(), budget, "ideal", |base, a| {
            self.closure_from(base, &[a], side)
        })
    }

    /// Essentiality of a right ideal: it meets every nonzero right ideal.
    ///
    /// Every nonzero right ideal contains some `aR` with `a != 0`, so it is
    /// enough to test the principal ones.
    pub fn is_essential_right_ideal(&self, ideal: &SubsetMask) -> Result<bool> {
        if !self.is_right_ideal(ideal) {
            return Err(AlgebraError::input(format!(
                "{ideal:?} is not a right ideal of {}",
                self.label()
            )));
        }
        Ok(self
            .nonzero_elements()
            .all(|a| ideal.meets_nontrivially(&self.right_multiples(a))))
    }

    /// Definitional essentiality test over a full ideal enumeration.
    pub fn is_essential_by_enumeration(
        &self,
        ideal: &SubsetMask,
        side: Sidedness,
        budget: &LatticeBudget,
    ) -> Result<bool> {
        let ideals = self.enumerate_right_ideals(side == Sidedness::TwoSided, budget)?;
        Ok(ideals
            .iter()
            .filter(|j| j.has_nonzero())
            .all(|j| ideal.meets_nontrivially(j)))
    }
}

/// Per-ring cache of principal ideals used by essentiality tests.
#[derive(Debug)]
pub struct RingIdeals {
    right_principal: Vec<SubsetMask>,
    two_sided_principal: OnceLock<Vec<SubsetMask>>,
}

impl RingIdeals {
    pub fn new(ring: &FiniteRing) -> Self {
        RingIdeals {
            right_principal: ring.elements().map(|a| ring.right_multiples(a)).collect(),
            two_sided_principal: OnceLock::new(),
        }
    }

    /// `aR` for every element `a`.
    pub fn right_principal(&self) -> &[SubsetMask] {
        &self.right_principal
    }

    /// `RaR` for every element `a`.
    pub fn two_sided_principal(&self, ring: &FiniteRing) -> &[SubsetMask] {
        self.two_sided_principal.get_or_init(|| {
            ring.elements()
                .map(|a| ring.two_sided_ideal_closure(&[a]))
                .collect()
        })
    }

    /// Essentiality of a set already known to be a right ideal.
    pub fn is_essential(&self, ring: &FiniteRing, ideal: &SubsetMask, side: Sidedness) -> bool {
        let principal = match side {
            Sidedness::Right => &self.right_principal[..],
            Sidedness::TwoSided => self.two_sided_principal(ring),
        };
        principal[1..].iter().all(|j| ideal.meets_nontrivially(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower2() -> FiniteRing {
        FiniteRing::pattern_matrix(2, 2, &[vec![true, false], vec![true, true]]).unwrap()
    }

    /// Every subset of the carrier that passes the ideal axioms.
    fn subset_filter(r: &FiniteRing, two_sided: bool) -> Vec<SubsetMask> {
        let n = r.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        'subsets: for bits in 0u32..(1 << n) {
            if bits & 1 == 0 {
                continue;
            }
            let has = |x: usize| bits >> x & 1 == 1;
            for a in (0..n).filter(|&a| has(a)) {
                for b in (0..n).filter(|&b| has(b)) {
                    if !has(r.add(a, b)) {
                        continue 'subsets;
                    }
                }
                for s in 0..n {
                    if !has(r.mul(a, s)) || (two_sided && !has(r.mul(s, a))) {
                        continue 'subsets;
                    }
                }
            }
            out.push(SubsetMask::from_predicate(n, has));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn z6_closures() {
        let r = FiniteRing::cyclic(6).unwrap();
        assert_eq!(r.right_ideal_closure(&[2]).to_vec(), vec![0, 2, 4]);
        assert_eq!(r.right_ideal_closure(&[]).to_vec(), vec![0]);
        assert_eq!(r.right_ideal_closure(&[2, 3]).len(), 6);
    }

    #[test]
    fn lower_triangular_closure_matches_filter() {
        let r = lower2();
        // E21 has index 2
        let closure = r.right_ideal_closure(&[2]);
        let minimal = subset_filter(&r, false)
            .into_iter()
            .filter(|m| m.contains(2))
            .min_by_key(|m| m.len())
            .unwrap();
        assert_eq!(closure, minimal);
        assert_eq!(closure.to_vec(), vec![0, 2]);
    }

    #[test]
    fn ideal_counts() {
        let z6 = FiniteRing::cyclic(6).unwrap();
        let ideals = z6
            .enumerate_right_ideals(false, &LatticeBudget::default())
            .unwrap();
        assert_eq!(
            ideals.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]
        );
        let z8 = FiniteRing::cyclic(8).unwrap();
        let ideals = z8
            .enumerate_right_ideals(false, &LatticeBudget::default())
            .unwrap();
        assert_eq!(
            ideals.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 4], vec![0, 2, 4, 6], (0..8).collect()]
        );
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        let rings = vec![
            lower2(),
            FiniteRing::pattern_matrix(2, 2, &[vec![true; 2], vec![true; 2]]).unwrap(),
            FiniteRing::cyclic(12).unwrap(),
            FiniteRing::product(
                &FiniteRing::cyclic(2).unwrap(),
                &FiniteRing::cyclic(4).unwrap(),
            )
            .unwrap(),
        ];
        for r in rings {
            for two_sided in [false, true] {
                assert_eq!(
                    r.enumerate_right_ideals(two_sided, &LatticeBudget::default())
                        .unwrap(),
                    subset_filter(&r, two_sided),
                    "{} two_sided={two_sided}",
                    r.label()
                );
            }
        }
    }

    #[test]
    fn budget_errors() {
        let r = FiniteRing::cyclic(30).unwrap();
        let tight = LatticeBudget {
            max_order: 10,
            max_members: 100,
        };
        assert!(matches!(
            r.enumerate_right_ideals(false, &tight),
            Err(AlgebraError::Budget { cap: 10, .. })
        ));
        let few = LatticeBudget {
            max_order: 100,
            max_members: 3,
        };
        assert!(matches!(
            r.enumerate_right_ideals(false, &few),
            Err(AlgebraError::Budget { cap: 3, .. })
        ));
    }

    #[test]
    fn essential_examples() {
        let z6 = FiniteRing::cyclic(6).unwrap();
        assert!(z6.is_essential_right_ideal(&SubsetMask::full(6)).unwrap());
        assert!(!z6.is_essential_right_ideal(&SubsetMask::zero(6)).unwrap());
        assert!(z6
            .is_essential_right_ideal(&SubsetMask::from_indices(6, [0, 1]))
            .is_err());
        let z8 = FiniteRing::cyclic(8).unwrap();
        assert!(z8
            .is_essential_right_ideal(&SubsetMask::from_indices(8, [0, 4]))
            .unwrap());
    }

    #[test]
    fn cyclic_test_agrees_with_definition() {
        let budget = LatticeBudget::default();
        for r in [lower2(), FiniteRing::cyclic(12).unwrap()] {
            let cache = RingIdeals::new(&r);
            for side in [Sidedness::Right, Sidedness::TwoSided] {
                for ideal in r.enumerate_right_ideals(false, &budget).unwrap() {
                    assert_eq!(
                        cache.is_essential(&r, &ideal, side),
                        r.is_essential_by_enumeration(&ideal, side, &budget)
                            .unwrap()
                    );
                }
            }
        }
    }
}
