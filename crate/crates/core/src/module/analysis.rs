use super::FiniteModule;
use crate::error::{AlgebraError, Result};
use crate::lattice::{self, LatticeBudget};
use crate::mask::SubsetMask;
use crate::ring::{RingIdeals, Sidedness};

/// `T(M)` and `T*(M)`: elements with nonzero and zero annihilator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPartition {
    pub torsion: SubsetMask,
    pub torsion_free: SubsetMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulePredicates {
    pub faithful: bool,
    pub torsion_free: bool,
    pub torsion_module: bool,
    pub nonsingular: bool,
    pub singular: bool,
    pub reduced: bool,
    pub torsion_set_is_submodule: bool,
    pub annihilator_comparability: bool,
}

impl FiniteModule {
    /// `ann(m) = {r : m·r = 0}`, a right ideal of the ring.
    pub fn annihilator(&self, m: usize) -> SubsetMask {
        SubsetMask::from_predicate(self.ring().order(), |r| self.act(m, r) == 0)
    }

    /// `ann(N)`, the intersection of the annihilators of the members of `set`.
    pub fn annihilator_of_set(&self, set: &SubsetMask) -> SubsetMask {
        SubsetMask::from_predicate(self.ring().order(), |r| {
            set.iter().all(|m| self.act(m, r) == 0)
        })
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator_of_set(&SubsetMask::full(self.order()))
            .is_zero_only()
    }

    pub fn torsion_partition(&self) -> TorsionPartition {
        let torsion = SubsetMask::from_predicate(self.order(), |m| {
            self.ring().nonzero_elements().any(|r| self.act(m, r) == 0)
        });
        let torsion_free = torsion.complement();
        TorsionPartition {
            torsion,
            torsion_free,
        }
    }

    /// `Zd(M) = {r : m·r = 0 for some nonzero m}`.
    pub fn zero_divisors(&self) -> SubsetMask {
        SubsetMask::from_predicate(self.ring().order(), |r| {
            self.nonzero_elements().any(|m| self.act(m, r) == 0)
        })
    }

    /// `Zd(M)` recomputed by scanning each action column for a nontrivial
    /// kernel; kept separate from [`FiniteModule::zero_divisors`] so the two
    /// can be compared.
    pub fn zero_divisors_by_columns(&self) -> SubsetMask {
        let k = self.ring().order();
        let mut out = SubsetMask::empty(k);
        for r in 0..k {
            let image = self.multiples_by(r);
            if image.len() < self.order() {
                out.insert(r);
            }
        }
        out
    }

    /// `Z(M)`, elements whose annihilator is an essential right ideal.
    pub fn singular_submodule(&self) -> Result<SubsetMask> {
        let ideals = RingIdeals::new(self.ring());
        let z = self.singular_set(&ideals, Sidedness::Right);
        if !self.is_submodule(&z) {
            return Err(AlgebraError::Consistency {
                message: format!("singular set of {} is not a submodule", self.label()),
                element: z.first().unwrap_or(0),
            });
        }
        Ok(z)
    }

    /// The singular set with essentiality measured against the chosen kind
    /// of ideal. The two-sided variant need not be a submodule.
    pub fn singular_set(&self, ideals: &RingIdeals, side: Sidedness) -> SubsetMask {
        SubsetMask::from_predicate(self.order(), |m| {
            ideals.is_essential(self.ring(), &self.annihilator(m), side)
        })
    }

    pub fn submodule_closure(&self, gens: &[usize]) -> SubsetMask {
        self.closure_from(&SubsetMask::empty(self.order()), gens)
    }

    fn closure_from(&self, seed: &SubsetMask, gens: &[usize]) -> SubsetMask {
        let k = self.ring().order();
        lattice::close(
            seed,
            gens.iter().copied(),
            |a, b| self.add(a, b),
            |e, out| out.extend((0..k).map(|r| self.act(e, r))),
        )
    }

    /// All submodules by closure-based lattice generation.
    pub fn enumerate_submodules(&self, budget: &LatticeBudget) -> Result<Vec<SubsetMask>> {
        lattice::generate(self.order(), budget, "submodule", |base, a| {
            self.closure_from(base, &[a])
        })
    }

    /// True when `M` is nonzero and has no submodules besides 0 and `M`.
    pub fn is_simple(&self) -> bool {
        self.order() > 1
            && self
                .nonzero_elements()
                .all(|m| self.cyclic_submodule(m).is_full())
    }

    pub fn module_predicates(&self) -> Result<ModulePredicates> {
        Ok(ModuleProfile::new(self)?.predicates)
    }
}

/// Everything about a module that the fusibility and statement checks
/// reuse, computed once.
#[derive(Debug, Clone)]
pub struct ModuleProfile {
    pub annihilators: Vec<SubsetMask>,
    pub torsion: TorsionPartition,
    pub zero_divisors: SubsetMask,
    /// `R - Zd(M)`.
    pub regular_multipliers: SubsetMask,
    pub singular: SubsetMask,
    pub predicates: ModulePredicates,
}

impl ModuleProfile {
    pub fn new(module: &FiniteModule) -> Result<ModuleProfile> {
        let ring = module.ring();
        let k = ring.order();
        let annihilators: Vec<SubsetMask> =
            module.elements().map(|m| module.annihilator(m)).collect();
        let torsion = SubsetMask::from_predicate(module.order(), |m| annihilators[m].has_nonzero());
        let torsion = TorsionPartition {
            torsion_free: torsion.complement(),
            torsion,
        };
        let mut zero_divisors = SubsetMask::empty(k);
        for ann in &annihilators[1..] {
            zero_divisors.union_with(ann);
        }
        let regular_multipliers = zero_divisors.complement();
        let ideals = RingIdeals::new(ring);
        let singular = SubsetMask::from_predicate(module.order(), |m| {
            ideals.is_essential(ring, &annihilators[m], Sidedness::Right)
        });
        if !module.is_submodule(&singular) {
            return Err(AlgebraError::Consistency {
                message: format!("singular set of {} is not a submodule", module.label()),
                element: singular.first().unwrap_or(0),
            });
        }

        let mut faithful_ann = SubsetMask::full(k);
        for ann in &annihilators {
            faithful_ann.intersect_with(ann);
        }
        let cyclic: Vec<SubsetMask> = module
            .elements()
            .map(|m| module.cyclic_submodule(m))
            .collect();
        let column: Vec<SubsetMask> = ring.elements().map(|r| module.multiples_by(r)).collect();
        let reduced = module.elements().all(|m| {
            annihilators[m]
                .iter()
                .all(|r| !cyclic[m].meets_nontrivially(&column[r]))
        });
        let annihilator_comparability = annihilators.iter().enumerate().all(|(i, a)| {
            annihilators[i + 1..]
                .iter()
                .all(|b| a.is_subset(b) || b.is_subset(a))
        });
        let predicates = ModulePredicates {
            faithful: faithful_ann.is_zero_only(),
            torsion_free: torsion.torsion.is_zero_only(),
            torsion_module: torsion.torsion.is_full(),
            nonsingular: singular.is_zero_only(),
            singular: singular.is_full(),
            reduced,
            torsion_set_is_submodule: module.is_submodule(&torsion.torsion),
            annihilator_comparability,
        };
        Ok(ModuleProfile {
            annihilators,
            torsion,
            zero_divisors,
            regular_multipliers,
            singular,
            predicates,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::FiniteRing;

    fn z(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::cyclic(n).unwrap())
    }

    fn four_z8() -> FiniteModule {
        FiniteModule::regular(&z(8))
            .submodule_as_module(&SubsetMask::from_indices(8, [0, 4]))
            .unwrap()
    }

    #[test]
    fn annihilators() {
        let m = FiniteModule::regular(&z(6));
        assert_eq!(m.annihilator(2).to_vec(), vec![0, 3]);
        assert!(m.annihilator(1).is_zero_only());
        assert!(m.is_faithful());
        assert_eq!(four_z8().annihilator(1).to_vec(), vec![0, 2, 4, 6]);
        assert!(!four_z8().is_faithful());
    }

    #[test]
    fn torsion_sets() {
        let t = FiniteModule::regular(&z(6)).torsion_partition();
        assert_eq!(t.torsion.to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(t.torsion_free.to_vec(), vec![1, 5]);
        let t = four_z8().torsion_partition();
        assert_eq!(t.torsion.to_vec(), vec![0, 1]);
        assert!(t.torsion_free.is_empty());
    }

    #[test]
    fn zero_divisor_sets() {
        let m = FiniteModule::regular(&z(6));
        assert_eq!(m.zero_divisors().complement().to_vec(), vec![1, 5]);
        assert_eq!(
            four_z8().zero_divisors().complement().to_vec(),
            vec![1, 3, 5, 7]
        );
        let zero = FiniteModule::quotient_of_ring(&z(6), &SubsetMask::full(6)).unwrap();
        assert!(zero.zero_divisors().is_empty());
        assert!(zero.zero_divisors_by_columns().is_empty());
    }

    #[test]
    fn singular_examples() {
        let lower = Arc::new(
            FiniteRing::pattern_matrix(2, 2, &[vec![true, false], vec![true, true]]).unwrap(),
        );
        assert!(FiniteModule::regular(&lower)
            .singular_submodule()
            .unwrap()
            .is_zero_only());
        let f = FiniteModule::regular(&z(5));
        assert!(f.singular_submodule().unwrap().is_zero_only());
        let z8 = FiniteModule::regular(&z(8));
        assert_eq!(z8.singular_submodule().unwrap().to_vec(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn predicates() {
        let p = four_z8().module_predicates().unwrap();
        assert!(p.reduced && p.torsion_module && !p.torsion_free && !p.faithful);
        let p = FiniteModule::regular(&z(6)).module_predicates().unwrap();
        assert!(!p.torsion_set_is_submodule);
        assert!(p.reduced && p.nonsingular && p.faithful);
        let p = FiniteModule::regular(&z(7)).module_predicates().unwrap();
        assert!(p.faithful && p.torsion_free && p.nonsingular && p.reduced);
        let p = FiniteModule::regular(&z(4)).module_predicates().unwrap();
        assert!(!p.reduced && p.annihilator_comparability);
    }

    #[test]
    fn submodule_lattice() {
        let m = FiniteModule::regular(&z(6));
        let subs = m.enumerate_submodules(&LatticeBudget::default()).unwrap();
        assert_eq!(subs.len(), 4);
        assert_eq!(m.submodule_closure(&[4]).to_vec(), vec![0, 2, 4]);
        let prod = FiniteModule::product(
            &FiniteModule::regular(&z(4)),
            &FiniteModule::regular(&z(18)),
        )
        .unwrap();
        let subs = prod
            .enumerate_submodules(&LatticeBudget::default())
            .unwrap();
        assert!(subs.contains(&SubsetMask::from_indices(72, [0, 9])));
    }
}
